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
 * @file statevector.hpp
 * Dense state-vector simulation with in-place stride kernels.
 */
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <ostream>
#include <span>
#include <vector>

#include "bitstring.hpp"
#include "circuit.hpp"
#include "pauli.hpp"
#include "rng.hpp"

namespace vqesim {

/// Largest register the dense backend accepts (16 GiB would be 30; 26 is ~1 GiB).
inline constexpr std::size_t kStateVectorQubitCap = 26;

class StateVector {
  public:
    StateVector() = default;

    /// |0...0> on n qubits.
    explicit StateVector(std::size_t n_qubits) : n_(n_qubits) {
        if (n_qubits > kStateVectorQubitCap) {
            throw ResourceLimitError("state vector limited to " +
                                     std::to_string(kStateVectorQubitCap) +
                                     " qubits; use the MPS backend for larger registers");
        }
        amp_.assign(std::size_t{1} << n_qubits, complex_t{});
        amp_[0] = 1.0;
    }

    static StateVector basis(const Bitstring &b) {
        StateVector s(b.size());
        s.amp_[0] = 0.0;
        s.amp_[b.index()] = 1.0;
        return s;
    }

    static StateVector from_amplitudes(std::size_t n_qubits, std::vector<complex_t> amps) {
        StateVector s(n_qubits);
        if (amps.size() != s.amp_.size()) {
            throw DomainError("amplitude vector length does not match 2^n_qubits");
        }
        s.amp_ = std::move(amps);
        return s;
    }

    [[nodiscard]] std::size_t n_qubits() const { return n_; }
    [[nodiscard]] std::size_t dim() const { return amp_.size(); }
    [[nodiscard]] std::span<const complex_t> amplitudes() const { return amp_; }
    [[nodiscard]] std::span<complex_t> amplitudes() { return amp_; }
    [[nodiscard]] complex_t operator[](std::size_t i) const { return amp_[i]; }

    [[nodiscard]] double norm() const {
        double acc = 0.0;
        for (const auto &a : amp_) {
            acc += std::norm(a);
        }
        return std::sqrt(acc);
    }

    /// <this|other>
    [[nodiscard]] complex_t inner(const StateVector &other) const {
        if (other.n_ != n_) {
            throw DomainError("inner product of states with different qubit counts");
        }
        complex_t acc{};
        for (std::size_t i = 0; i < amp_.size(); ++i) {
            acc += std::conj(amp_[i]) * other.amp_[i];
        }
        return acc;
    }

    /// Applies an arbitrary (not necessarily unitary) 2x2 matrix to qubit q.
    void apply_matrix(const Mat2 &m, std::uint32_t q) {
        check_qubit(q);
        const std::size_t stride = std::size_t{1} << q;
        const std::size_t dim = amp_.size();
        for (std::size_t base = 0; base < dim; base += 2 * stride) {
            for (std::size_t off = 0; off < stride; ++off) {
                const std::size_t i0 = base + off;
                const std::size_t i1 = i0 + stride;
                const complex_t a0 = amp_[i0];
                const complex_t a1 = amp_[i1];
                amp_[i0] = m[0] * a0 + m[1] * a1;
                amp_[i1] = m[2] * a0 + m[3] * a1;
            }
        }
    }

    /// Applies a 4x4 matrix; qa is the high bit of the matrix basis.
    void apply_matrix(const Mat4 &m, std::uint32_t qa, std::uint32_t qb) {
        check_qubit(qa);
        check_qubit(qb);
        if (qa == qb) {
            throw DomainError("two-qubit gate on a repeated qubit");
        }
        const std::size_t ba = std::size_t{1} << qa;
        const std::size_t bb = std::size_t{1} << qb;
        const std::size_t lo = std::min(ba, bb);
        const std::size_t hi = std::max(ba, bb);
        const std::size_t dim = amp_.size();
        for (std::size_t i = 0; i < dim; ++i) {
            if ((i & lo) != 0 || (i & hi) != 0) {
                continue;
            }
            const std::size_t idx[4] = {i, i | bb, i | ba, i | ba | bb};
            const complex_t in[4] = {amp_[idx[0]], amp_[idx[1]], amp_[idx[2]], amp_[idx[3]]};
            for (std::size_t r = 0; r < 4; ++r) {
                amp_[idx[r]] =
                    m[r * 4] * in[0] + m[r * 4 + 1] * in[1] + m[r * 4 + 2] * in[2] + m[r * 4 + 3] * in[3];
            }
        }
    }

    void apply(const BoundGate &g, bool adjoint_gate = false) {
        if (gate_arity(g.kind) == 1) {
            const auto m = matrix_1q(g.kind, g.params());
            apply_matrix(adjoint_gate ? adjoint(m) : m, g.qubits[0]);
        } else {
            const auto m = matrix_2q(g.kind, g.params());
            apply_matrix(adjoint_gate ? adjoint(m) : m, g.qubits[0], g.qubits[1]);
        }
    }

    /// In-place P|psi>.
    void apply_pauli(const PauliString &p) {
        if (p.min_qubits() > n_) {
            throw DomainError("Pauli string acts outside the register");
        }
        const PauliMasks mk(p);
        const complex_t g = mk.global();
        std::vector<complex_t> out(amp_.size());
        for (std::size_t j = 0; j < amp_.size(); ++j) {
            out[j ^ mk.flip] = g * mk.sign(j) * amp_[j];
        }
        amp_ = std::move(out);
    }

    /// Raw little-endian dump: 2^n records of (real, imag) IEEE-754 doubles,
    /// basis index order with qubit 0 as the least-significant bit.
    void dump(std::ostream &out) const {
        static_assert(std::endian::native == std::endian::little,
                      "dump assumes a little-endian host");
        out.write(reinterpret_cast<const char *>(amp_.data()),
                  static_cast<std::streamsize>(amp_.size() * sizeof(complex_t)));
    }

  private:
    void check_qubit(std::uint32_t q) const {
        if (q >= n_) {
            throw DomainError("qubit " + std::to_string(q) + " outside " + std::to_string(n_) +
                              "-qubit register");
        }
    }

    std::size_t n_ = 0;
    std::vector<complex_t> amp_;
};

namespace sv {

[[nodiscard]] inline StateVector init(const Bitstring &b) { return StateVector::basis(b); }

[[nodiscard]] inline StateVector evolve(StateVector s, const BoundCircuit &c) {
    if (c.n_qubits != s.n_qubits()) {
        throw DomainError("circuit register (" + std::to_string(c.n_qubits) +
                          ") does not match state (" + std::to_string(s.n_qubits()) + ")");
    }
    for (const auto &g : c.gates) {
        s.apply(g);
    }
    return s;
}

/// <psi|P|psi> evaluated directly from the basis-state action of P.
[[nodiscard]] inline complex_t term_expectation(const StateVector &s, const PauliString &p) {
    if (p.min_qubits() > s.n_qubits()) {
        throw DomainError("Pauli string acts outside the register");
    }
    const PauliMasks mk(p);
    const auto a = s.amplitudes();
    complex_t acc{};
    for (std::size_t j = 0; j < a.size(); ++j) {
        acc += std::conj(a[j ^ mk.flip]) * mk.sign(j) * a[j];
    }
    return mk.global() * acc;
}

[[nodiscard]] inline double expectation(const StateVector &s, const PauliSum &h) {
    if (!is_hermitian(h)) {
        throw DomainError("expectation requires a Hermitian observable");
    }
    complex_t acc{};
    for (const auto &t : h.terms()) {
        acc += t.coefficient * term_expectation(s, t.string);
    }
    if (std::abs(acc.imag()) > 1e-10) {
        throw NumericalError("expectation of a Hermitian observable has imaginary part " +
                             std::to_string(acc.imag()));
    }
    return acc.real();
}

/// H|psi> (not normalised).
[[nodiscard]] inline StateVector apply_pauli_sum(const StateVector &s, const PauliSum &h) {
    if (h.min_qubits() > s.n_qubits()) {
        throw DomainError("Pauli sum acts outside the register");
    }
    std::vector<complex_t> out(s.dim(), complex_t{});
    const auto a = s.amplitudes();
    for (const auto &t : h.terms()) {
        const PauliMasks mk(t.string);
        const complex_t g = mk.global() * t.coefficient;
        for (std::size_t j = 0; j < a.size(); ++j) {
            out[j ^ mk.flip] += g * mk.sign(j) * a[j];
        }
    }
    return StateVector::from_amplitudes(s.n_qubits(), std::move(out));
}

/**
 * Shot-based estimate of <P>: rotate the support into the Z basis (H for X,
 * HY for Y), draw basis states from |amplitude|^2 with a counter-based
 * generator, and average the parity over the support.
 */
[[nodiscard]] inline double sample(const StateVector &s, const PauliString &p, std::size_t shots,
                                   std::uint64_t seed) {
    if (shots == 0) {
        throw DomainError("sample requires at least one shot");
    }
    StateVector rotated = s;
    std::uint64_t support = 0;
    for (const auto &[q, axis] : p.entries()) {
        if (q >= s.n_qubits()) {
            throw DomainError("Pauli string acts outside the register");
        }
        if (axis == PauliAxis::X) {
            rotated.apply_matrix(matrix_1q(GateKind::H, {}), q);
        } else if (axis == PauliAxis::Y) {
            rotated.apply_matrix(adjoint(matrix_1q(GateKind::HY, {})), q);
        }
        support |= std::uint64_t{1} << q;
    }
    const auto a = rotated.amplitudes();
    std::vector<double> cdf(a.size());
    double total = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        total += std::norm(a[j]);
        cdf[j] = total;
    }
    CounterRng rng(seed);
    long long parity_sum = 0;
    for (std::size_t k = 0; k < shots; ++k) {
        const double u = rng.uniform(k) * total;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        if (it == cdf.end()) {
            --it;
        }
        const auto j = static_cast<std::uint64_t>(it - cdf.begin());
        parity_sum += (std::popcount(j & support) & 1) != 0 ? -1 : 1;
    }
    return static_cast<double>(parity_sum) / static_cast<double>(shots);
}

} // namespace sv

} // namespace vqesim
