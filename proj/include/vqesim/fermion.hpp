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
 * @file fermion.hpp
 * Second-quantized operators, molecular integrals and the Jordan-Wigner map.
 *
 * Spin orbitals are interleaved: spatial orbital p owns spin orbitals 2p
 * (alpha) and 2p+1 (beta). Every Pauli string produced from a molecular
 * Hamiltonian depends on this choice.
 */
#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bitstring.hpp"
#include "pauli.hpp"

namespace vqesim {

/// Dense rank-4 real tensor with row-major (p, q, r, s) layout.
class Tensor4 {
  public:
    Tensor4() = default;
    explicit Tensor4(std::size_t n) : n_(n), data_(n * n * n * n, 0.0) {}

    [[nodiscard]] std::size_t dim() const { return n_; }
    double &operator()(std::size_t p, std::size_t q, std::size_t r, std::size_t s) {
        return data_[((p * n_ + q) * n_ + r) * n_ + s];
    }
    double operator()(std::size_t p, std::size_t q, std::size_t r, std::size_t s) const {
        return data_[((p * n_ + q) * n_ + r) * n_ + s];
    }
    [[nodiscard]] const std::vector<double> &data() const { return data_; }

  private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

/**
 * One- and two-electron integrals in hartree. g is stored in physicist
 * order: g(p,q,r,s) = <pq|rs> = (pr|qs).
 */
struct MolecularIntegrals {
    std::size_t n_spatial = 0;
    int n_electrons = 0;
    int ms2 = 0;
    double e_nuclear = 0.0;
    Eigen::MatrixXd h;
    Tensor4 g;

    static MolecularIntegrals zeros(std::size_t n_spatial, int n_electrons) {
        MolecularIntegrals m;
        m.n_spatial = n_spatial;
        m.n_electrons = n_electrons;
        m.h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_spatial),
                                    static_cast<Eigen::Index>(n_spatial));
        m.g = Tensor4(n_spatial);
        return m;
    }

    /// Throws DomainError if any invariant (symmetry, electron count) fails.
    void validate(double tol = 1e-10) const {
        const auto n = n_spatial;
        if (n == 0 || static_cast<std::size_t>(h.rows()) != n ||
            static_cast<std::size_t>(h.cols()) != n || g.dim() != n) {
            throw DomainError("integral dimensions inconsistent with n_spatial");
        }
        if (n_electrons <= 0 || static_cast<std::size_t>(n_electrons) > 2 * n) {
            throw DomainError("electron count " + std::to_string(n_electrons) +
                              " outside (0, 2*n_spatial]");
        }
        if ((h - h.transpose()).cwiseAbs().maxCoeff() > tol) {
            throw DomainError("one-electron integrals are not symmetric");
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = 0; q < n; ++q) {
                for (std::size_t r = 0; r < n; ++r) {
                    for (std::size_t s = 0; s < n; ++s) {
                        const double v = g(p, q, r, s);
                        const double images[] = {g(q, p, s, r), g(r, s, p, q), g(s, r, q, p),
                                                 g(r, q, p, s), g(p, s, r, q), g(s, p, q, r),
                                                 g(q, r, s, p)};
                        for (double w : images) {
                            if (std::abs(v - w) > tol) {
                                throw DomainError("two-electron integrals violate 8-fold symmetry");
                            }
                        }
                    }
                }
            }
        }
    }
};

struct LadderOp {
    std::size_t mode = 0;
    bool creation = false;

    static LadderOp create(std::size_t m) { return {m, true}; }
    static LadderOp annihilate(std::size_t m) { return {m, false}; }
    friend bool operator==(const LadderOp &, const LadderOp &) = default;
};

/// coefficient * ops[0] ops[1] ... (leftmost operator acts last).
struct FermionTerm {
    complex_t coefficient{1.0, 0.0};
    std::vector<LadderOp> ops;

    /// Hermitian conjugate: reversed order, creation flags flipped.
    [[nodiscard]] FermionTerm adjoint() const {
        FermionTerm out{std::conj(coefficient), {}};
        out.ops.reserve(ops.size());
        for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
            out.ops.push_back({it->mode, !it->creation});
        }
        return out;
    }
};

struct FermionSum {
    std::size_t n_modes = 0;
    std::vector<FermionTerm> terms;
    double constant = 0.0;

    void add(complex_t c, std::vector<LadderOp> ops) {
        for (const auto &op : ops) {
            n_modes = std::max(n_modes, op.mode + 1);
        }
        terms.push_back({c, std::move(ops)});
    }
};

struct OrbitalRotation {
    Eigen::MatrixXd u;
};

/// Spin-orbital index under the interleaved convention.
[[nodiscard]] constexpr std::size_t spin_orbital(std::size_t spatial, int spin) {
    return 2 * spatial + static_cast<std::size_t>(spin);
}

/**
 * h~ = U^T h U and the four-index transform of g, done as four staged
 * single-index contractions (O(n^5)).
 */
[[nodiscard]] inline MolecularIntegrals rotate_orbitals(const MolecularIntegrals &m,
                                                        const OrbitalRotation &rot) {
    const std::size_t n = m.n_spatial;
    const auto &u = rot.u;
    if (static_cast<std::size_t>(u.rows()) != n || static_cast<std::size_t>(u.cols()) != n) {
        throw DomainError("rotation dimension does not match n_spatial");
    }
    if ((u.transpose() * u - Eigen::MatrixXd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() >
        1e-10) {
        throw DomainError("orbital rotation is not orthogonal");
    }
    MolecularIntegrals out = m;
    out.h = u.transpose() * m.h * u;

    // Contract one index at a time; `slot` picks which index of src is
    // replaced by the rotated one.
    auto stage = [&](const Tensor4 &src, int slot) {
        Tensor4 dst(n);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                for (std::size_t c = 0; c < n; ++c) {
                    for (std::size_t d = 0; d < n; ++d) {
                        double acc = 0.0;
                        for (std::size_t k = 0; k < n; ++k) {
                            const auto kk = static_cast<Eigen::Index>(k);
                            switch (slot) {
                            case 0:
                                acc += src(k, b, c, d) * u(kk, static_cast<Eigen::Index>(a));
                                break;
                            case 1:
                                acc += src(a, k, c, d) * u(kk, static_cast<Eigen::Index>(b));
                                break;
                            case 2:
                                acc += src(a, b, k, d) * u(kk, static_cast<Eigen::Index>(c));
                                break;
                            default:
                                acc += src(a, b, c, k) * u(kk, static_cast<Eigen::Index>(d));
                                break;
                            }
                        }
                        dst(a, b, c, d) = acc;
                    }
                }
            }
        }
        return dst;
    };
    out.g = stage(stage(stage(stage(m.g, 3), 2), 1), 0);
    return out;
}

/**
 * Spin-orbital Hamiltonian
 *   sum h_pq a+_{p s} a_{q s} + 1/2 sum <pq|rs> a+_{p s} a+_{q t} a_{s t} a_{r s}
 * plus the nuclear repulsion as constant.
 */
[[nodiscard]] inline FermionSum build_hamiltonian(const MolecularIntegrals &m) {
    FermionSum f;
    f.n_modes = 2 * m.n_spatial;
    f.constant = m.e_nuclear;
    const std::size_t n = m.n_spatial;
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            const double v = m.h(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q));
            if (v == 0.0) {
                continue;
            }
            for (int s = 0; s < 2; ++s) {
                f.terms.push_back({v, {LadderOp::create(spin_orbital(p, s)),
                                       LadderOp::annihilate(spin_orbital(q, s))}});
            }
        }
    }
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            for (std::size_t r = 0; r < n; ++r) {
                for (std::size_t s = 0; s < n; ++s) {
                    const double v = m.g(p, q, r, s);
                    if (v == 0.0) {
                        continue;
                    }
                    for (int sa = 0; sa < 2; ++sa) {
                        for (int sb = 0; sb < 2; ++sb) {
                            const auto P = spin_orbital(p, sa);
                            const auto Q = spin_orbital(q, sb);
                            const auto R = spin_orbital(r, sa);
                            const auto S = spin_orbital(s, sb);
                            if (P == Q || R == S) {
                                continue;
                            }
                            f.terms.push_back({0.5 * v,
                                               {LadderOp::create(P), LadderOp::create(Q),
                                                LadderOp::annihilate(S),
                                                LadderOp::annihilate(R)}});
                        }
                    }
                }
            }
        }
    }
    return f;
}

namespace detail {
/// a+_p = (X_p - iY_p)/2 Z_0..Z_{p-1};  a_p = (X_p + iY_p)/2 Z_0..Z_{p-1}.
inline PauliSum jw_ladder(const LadderOp &op) {
    std::vector<PauliString::Entry> x;
    std::vector<PauliString::Entry> y;
    const auto mode = static_cast<std::uint32_t>(op.mode);
    for (std::uint32_t k = 0; k < mode; ++k) {
        x.emplace_back(k, PauliAxis::Z);
        y.emplace_back(k, PauliAxis::Z);
    }
    x.emplace_back(mode, PauliAxis::X);
    y.emplace_back(mode, PauliAxis::Y);
    PauliSum out;
    out.add(0.5, PauliString(std::move(x)));
    out.add(op.creation ? complex_t{0.0, -0.5} : complex_t{0.0, 0.5}, PauliString(std::move(y)));
    return out;
}

inline void jw_accumulate(const FermionTerm &t, std::map<PauliString, complex_t> &acc) {
    PauliSum prod = PauliSum::identity(t.coefficient);
    for (const auto &op : t.ops) {
        prod = simplify(prod * jw_ladder(op), 0.0);
    }
    for (const auto &pt : prod.terms()) {
        acc[pt.string] += pt.coefficient;
    }
}

inline PauliSum from_accumulator(const std::map<PauliString, complex_t> &acc,
                                 double drop_threshold) {
    std::vector<PauliTerm> terms;
    for (const auto &[s, c] : acc) {
        if (std::abs(c) >= drop_threshold && c != complex_t{}) {
            terms.emplace_back(c, s);
        }
    }
    return PauliSum(std::move(terms));
}
} // namespace detail

[[nodiscard]] inline PauliSum jordan_wigner(const FermionTerm &t,
                                            double drop_threshold = kDefaultDropThreshold) {
    std::map<PauliString, complex_t> acc;
    detail::jw_accumulate(t, acc);
    return detail::from_accumulator(acc, drop_threshold);
}

[[nodiscard]] inline PauliSum jordan_wigner(const FermionSum &f,
                                            double drop_threshold = kDefaultDropThreshold) {
    std::map<PauliString, complex_t> acc;
    for (const auto &t : f.terms) {
        for (const auto &op : t.ops) {
            if (op.mode >= f.n_modes) {
                throw DomainError("ladder operator mode " + std::to_string(op.mode) +
                                  " outside declared mode count");
            }
        }
        detail::jw_accumulate(t, acc);
    }
    if (f.constant != 0.0) {
        acc[PauliString{}] += f.constant;
    }
    return detail::from_accumulator(acc, drop_threshold);
}

/// Aufbau occupation: the lowest n_electrons spin orbitals are set.
[[nodiscard]] inline Bitstring hf_reference(int n_electrons, std::size_t n_qubits) {
    if (n_electrons < 0 || static_cast<std::size_t>(n_electrons) > n_qubits) {
        throw DomainError("cannot place " + std::to_string(n_electrons) + " electrons in " +
                          std::to_string(n_qubits) + " spin orbitals");
    }
    Bitstring b(n_qubits);
    for (int k = 0; k < n_electrons; ++k) {
        b.set(static_cast<std::size_t>(k), true);
    }
    return b;
}

/// Convenience: integrals -> simplified qubit Hamiltonian.
[[nodiscard]] inline PauliSum qubit_hamiltonian(const MolecularIntegrals &m) {
    return jordan_wigner(build_hamiltonian(m));
}

} // namespace vqesim
