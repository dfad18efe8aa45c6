// Copyright 2026 The vqesim Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file pauli.hpp
 * Pauli strings, weighted Pauli sums and their algebra.
 *
 * Convention used throughout the library: qubit 0 is the least-significant
 * bit of every dense basis index.
 */
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "error.hpp"

namespace vqesim {

using complex_t = std::complex<double>;

/// Default magnitude below which simplified coefficients are dropped.
inline constexpr double kDefaultDropThreshold = 1e-12;

/// Largest qubit count for which dense 2^n x 2^n matrices are built.
inline constexpr std::size_t kDenseQubitCap = 12;

enum class PauliAxis : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline char axis_char(PauliAxis a) {
    constexpr char names[] = {'I', 'X', 'Y', 'Z'};
    return names[static_cast<int>(a)];
}

/// A power of i: value is i^power, power in [0, 4).
struct Phase {
    std::uint8_t power = 0;

    [[nodiscard]] complex_t value() const {
        constexpr double re[] = {1.0, 0.0, -1.0, 0.0};
        constexpr double im[] = {0.0, 1.0, 0.0, -1.0};
        return {re[power & 3U], im[power & 3U]};
    }
    friend Phase operator*(Phase a, Phase b) {
        return Phase{static_cast<std::uint8_t>((a.power + b.power) & 3U)};
    }
    friend bool operator==(Phase, Phase) = default;
};

/**
 * Tensor product of single-qubit Paulis, stored sparsely as (qubit, axis)
 * pairs sorted by qubit with identities omitted.
 */
class PauliString {
  public:
    using Entry = std::pair<std::uint32_t, PauliAxis>;

    PauliString() = default;

    /// Builds a string from arbitrary-order entries. Identity entries are
    /// dropped; a repeated qubit index is a DomainError.
    explicit PauliString(std::vector<Entry> entries) {
        std::sort(entries.begin(), entries.end(),
                  [](const Entry &a, const Entry &b) { return a.first < b.first; });
        for (std::size_t k = 1; k < entries.size(); ++k) {
            if (entries[k].first == entries[k - 1].first) {
                throw DomainError("Pauli string has duplicate qubit index " +
                                  std::to_string(entries[k].first));
            }
        }
        std::erase_if(entries, [](const Entry &e) { return e.second == PauliAxis::I; });
        entries_ = std::move(entries);
    }

    PauliString(std::initializer_list<Entry> entries)
        : PauliString(std::vector<Entry>(entries)) {}

    static PauliString single(std::uint32_t qubit, PauliAxis axis) {
        return PauliString({{qubit, axis}});
    }

    [[nodiscard]] std::span<const Entry> entries() const { return entries_; }
    [[nodiscard]] std::size_t weight() const { return entries_.size(); }
    [[nodiscard]] bool is_identity() const { return entries_.empty(); }

    [[nodiscard]] PauliAxis at(std::uint32_t qubit) const {
        auto it = std::lower_bound(
            entries_.begin(), entries_.end(), qubit,
            [](const Entry &e, std::uint32_t q) { return e.first < q; });
        return (it != entries_.end() && it->first == qubit) ? it->second
                                                           : PauliAxis::I;
    }

    /// One past the largest qubit index acted on (0 for the identity).
    [[nodiscard]] std::size_t min_qubits() const {
        return entries_.empty() ? 0 : entries_.back().first + 1;
    }

    /// e.g. "X0 Y1 Z3"; the identity renders as the empty string.
    [[nodiscard]] std::string to_string() const {
        std::string out;
        for (const auto &[q, a] : entries_) {
            if (!out.empty()) {
                out += ' ';
            }
            out += axis_char(a);
            out += std::to_string(q);
        }
        return out;
    }

    friend bool operator==(const PauliString &, const PauliString &) = default;

    /// Canonical order: index lists compared lexicographically, then axes.
    friend std::strong_ordering operator<=>(const PauliString &a,
                                            const PauliString &b) {
        const std::size_t n = std::min(a.entries_.size(), b.entries_.size());
        for (std::size_t k = 0; k < n; ++k) {
            if (auto c = a.entries_[k].first <=> b.entries_[k].first; c != 0) {
                return c;
            }
        }
        if (auto c = a.entries_.size() <=> b.entries_.size(); c != 0) {
            return c;
        }
        for (std::size_t k = 0; k < n; ++k) {
            if (auto c = a.entries_[k].second <=> b.entries_[k].second; c != 0) {
                return c;
            }
        }
        return std::strong_ordering::equal;
    }

  private:
    std::vector<Entry> entries_;
};

/// Result of multiplying two Pauli strings: a·b = phase·product.
struct PauliProduct {
    Phase phase;
    PauliString product;
};

namespace detail {
/// Single-qubit product a·b = i^power · axis.
inline std::pair<std::uint8_t, PauliAxis> multiply_axis(PauliAxis a, PauliAxis b) {
    if (a == PauliAxis::I) {
        return {0, b};
    }
    if (b == PauliAxis::I || a == b) {
        return {0, a == b ? PauliAxis::I : a};
    }
    const int ia = static_cast<int>(a);
    const int ib = static_cast<int>(b);
    const auto out = static_cast<PauliAxis>(ia ^ ib);
    // XY = iZ, YZ = iX, ZX = iY; reversed order gives -i.
    const bool cyclic = ((ib - ia + 3) % 3) == 1;
    return {static_cast<std::uint8_t>(cyclic ? 1 : 3), out};
}
} // namespace detail

[[nodiscard]] inline PauliProduct multiply(const PauliString &a, const PauliString &b) {
    std::vector<PauliString::Entry> out;
    out.reserve(a.weight() + b.weight());
    std::uint8_t power = 0;
    auto ea = a.entries();
    auto eb = b.entries();
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < ea.size() || j < eb.size()) {
        if (j == eb.size() || (i < ea.size() && ea[i].first < eb[j].first)) {
            out.push_back(ea[i++]);
        } else if (i == ea.size() || eb[j].first < ea[i].first) {
            out.push_back(eb[j++]);
        } else {
            auto [p, axis] = detail::multiply_axis(ea[i].second, eb[j].second);
            power = static_cast<std::uint8_t>((power + p) & 3U);
            if (axis != PauliAxis::I) {
                out.emplace_back(ea[i].first, axis);
            }
            ++i;
            ++j;
        }
    }
    return {Phase{power}, PauliString(std::move(out))};
}

/// True iff the strings differ by a non-identity axis on an even number of
/// shared qubits.
[[nodiscard]] inline bool commutes(const PauliString &a, const PauliString &b) {
    auto ea = a.entries();
    auto eb = b.entries();
    std::size_t i = 0;
    std::size_t j = 0;
    std::size_t clashes = 0;
    while (i < ea.size() && j < eb.size()) {
        if (ea[i].first < eb[j].first) {
            ++i;
        } else if (eb[j].first < ea[i].first) {
            ++j;
        } else {
            clashes += ea[i].second != eb[j].second ? 1 : 0;
            ++i;
            ++j;
        }
    }
    return clashes % 2 == 0;
}

struct PauliTerm {
    complex_t coefficient;
    PauliString string;

    PauliTerm(complex_t c, PauliString s) : coefficient(c), string(std::move(s)) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            throw DomainError("Pauli term coefficient is not finite");
        }
    }
};

/// Weighted sum of Pauli strings. Terms keep insertion order until
/// simplify() is called.
class PauliSum {
  public:
    PauliSum() = default;
    explicit PauliSum(std::vector<PauliTerm> terms) : terms_(std::move(terms)) {}
    PauliSum(complex_t c, PauliString s) { terms_.emplace_back(c, std::move(s)); }

    static PauliSum identity(complex_t c = 1.0) { return PauliSum(c, PauliString{}); }

    [[nodiscard]] const std::vector<PauliTerm> &terms() const { return terms_; }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }
    [[nodiscard]] bool empty() const { return terms_.empty(); }

    /// One past the largest qubit index in any term.
    [[nodiscard]] std::size_t min_qubits() const {
        std::size_t n = 0;
        for (const auto &t : terms_) {
            n = std::max(n, t.string.min_qubits());
        }
        return n;
    }

    void add(complex_t c, PauliString s) { terms_.emplace_back(c, std::move(s)); }
    void add(const PauliTerm &t) { terms_.push_back(t); }

    PauliSum &operator+=(const PauliSum &o) {
        terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
        return *this;
    }
    PauliSum &operator*=(complex_t c) {
        for (auto &t : terms_) {
            t.coefficient *= c;
        }
        return *this;
    }
    friend PauliSum operator+(PauliSum a, const PauliSum &b) { return a += b; }
    friend PauliSum operator-(PauliSum a, PauliSum b) { return a += (b *= -1.0); }
    friend PauliSum operator*(PauliSum a, complex_t c) { return a *= c; }
    friend PauliSum operator*(complex_t c, PauliSum a) { return a *= c; }

    /// Operator product, term by term (not simplified).
    friend PauliSum operator*(const PauliSum &a, const PauliSum &b) {
        PauliSum out;
        out.terms_.reserve(a.size() * b.size());
        for (const auto &ta : a.terms_) {
            for (const auto &tb : b.terms_) {
                auto [phase, prod] = multiply(ta.string, tb.string);
                out.terms_.emplace_back(phase.value() * ta.coefficient * tb.coefficient,
                                        std::move(prod));
            }
        }
        return out;
    }

  private:
    std::vector<PauliTerm> terms_;
};

/// Combines like terms, drops |c| < drop_threshold, sorts canonically.
[[nodiscard]] inline PauliSum simplify(const PauliSum &s,
                                       double drop_threshold = kDefaultDropThreshold) {
    if (drop_threshold < 0.0) {
        throw DomainError("drop threshold must be non-negative");
    }
    std::map<PauliString, complex_t> acc;
    for (const auto &t : s.terms()) {
        acc[t.string] += t.coefficient;
    }
    std::vector<PauliTerm> out;
    out.reserve(acc.size());
    for (auto &[str, c] : acc) {
        if (std::abs(c) >= drop_threshold && c != complex_t{}) {
            out.emplace_back(c, str);
        }
    }
    return PauliSum(std::move(out));
}

[[nodiscard]] inline bool is_hermitian(const PauliSum &s, double tol = 1e-10) {
    return std::all_of(s.terms().begin(), s.terms().end(), [tol](const PauliTerm &t) {
        return std::abs(t.coefficient.imag()) <= tol;
    });
}

/// [a, b] = ab - ba, simplified.
[[nodiscard]] inline PauliSum commutator(const PauliSum &a, const PauliSum &b) {
    PauliSum out;
    for (const auto &ta : a.terms()) {
        for (const auto &tb : b.terms()) {
            if (commutes(ta.string, tb.string)) {
                continue;
            }
            // Anticommuting strings: ab - ba = 2ab.
            auto [phase, prod] = multiply(ta.string, tb.string);
            out.add(2.0 * phase.value() * ta.coefficient * tb.coefficient, std::move(prod));
        }
    }
    return simplify(out);
}

/**
 * Bit masks describing a string's action on a computational basis state:
 * P|j> = i^n_y (-1)^popcount(j & phase) |j ^ flip>.
 */
struct PauliMasks {
    std::uint64_t flip = 0;
    std::uint64_t phase = 0;
    unsigned n_y = 0;

    explicit PauliMasks(const PauliString &p) {
        for (const auto &[q, a] : p.entries()) {
            if (q >= 64) {
                throw ResourceLimitError("dense Pauli action limited to 64 qubits");
            }
            const std::uint64_t bit = std::uint64_t{1} << q;
            if (a == PauliAxis::X || a == PauliAxis::Y) {
                flip |= bit;
            }
            if (a == PauliAxis::Z || a == PauliAxis::Y) {
                phase |= bit;
            }
            n_y += a == PauliAxis::Y ? 1U : 0U;
        }
    }

    [[nodiscard]] complex_t global() const {
        return Phase{static_cast<std::uint8_t>(n_y & 3U)}.value();
    }
    [[nodiscard]] double sign(std::uint64_t j) const {
        return (std::popcount(j & phase) & 1) != 0 ? -1.0 : 1.0;
    }
};

/// Dense 2^n x 2^n matrix of the sum; qubit 0 is the least-significant bit.
[[nodiscard]] inline Eigen::MatrixXcd to_dense_matrix(const PauliSum &s, std::size_t n_qubits) {
    if (n_qubits > kDenseQubitCap) {
        throw ResourceLimitError("dense matrix requested for " + std::to_string(n_qubits) +
                                 " qubits; cap is " + std::to_string(kDenseQubitCap));
    }
    if (s.min_qubits() > n_qubits) {
        throw DomainError("Pauli string index out of range for " + std::to_string(n_qubits) +
                          " qubits");
    }
    const std::uint64_t dim = std::uint64_t{1} << n_qubits;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                static_cast<Eigen::Index>(dim));
    for (const auto &t : s.terms()) {
        const PauliMasks mk(t.string);
        const complex_t g = mk.global() * t.coefficient;
        for (std::uint64_t j = 0; j < dim; ++j) {
            m(static_cast<Eigen::Index>(j ^ mk.flip), static_cast<Eigen::Index>(j)) +=
                g * mk.sign(j);
        }
    }
    return m;
}

} // namespace vqesim
