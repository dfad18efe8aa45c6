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
 * @file ansatz.hpp
 * Unitary coupled-cluster and hardware-efficient circuit generators.
 *
 * UCC excitations share one amplitude per spatial-orbital pattern:
 *
 *  - single p -> q:        sum_u a+_{q u} a_{p u}
 *  - double (p,q) -> (r,s): sum_{u,v} a+_{r u} a+_{s v} a_{q v} a_{p u}
 *
 * with u, v running over the two spin projections.
 *
 * Patterns are identified under exchange of the two electrons and under
 * hermitian conjugation. The exchange pattern (p,q) -> (q,p) has a Hermitian
 * spin-summed generator, so for generalized excitations it is represented by
 * its single alpha-beta component a+_{q a} a+_{p b} a_{q b} a_{p a}.
 *
 * Each generator G enters as exp(theta (G - G+)); its Jordan-Wigner image
 * sum_j i b_j P_j is applied as one first-order Trotter step of
 * exp(i theta b_j P_j) factors sharing the parameter.
 */
#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "fermion.hpp"

namespace vqesim {

/// One anti-Hermitian generator A = G - G+ and its qubit image.
struct Excitation {
    std::string label;
    std::vector<FermionTerm> generator; // G; the circuit uses G - G+
    PauliSum image;                     // JW(G - G+), purely imaginary coefficients
};

namespace detail {

inline Excitation make_excitation(std::string label, std::vector<FermionTerm> gen,
                                  std::size_t n_modes) {
    FermionSum a;
    a.n_modes = n_modes;
    for (const auto &t : gen) {
        a.terms.push_back(t);
        auto adj = t.adjoint();
        adj.coefficient = -adj.coefficient;
        a.terms.push_back(std::move(adj));
    }
    return {std::move(label), std::move(gen), jordan_wigner(a)};
}

inline std::vector<FermionTerm> spin_summed_double(std::size_t p, std::size_t q, std::size_t r,
                                                   std::size_t s) {
    std::vector<FermionTerm> out;
    for (int sa = 0; sa < 2; ++sa) {
        for (int sb = 0; sb < 2; ++sb) {
            const auto P = spin_orbital(p, sa);
            const auto Q = spin_orbital(q, sb);
            const auto R = spin_orbital(r, sa);
            const auto S = spin_orbital(s, sb);
            if (P == Q || R == S) {
                continue;
            }
            out.push_back({1.0,
                           {LadderOp::create(R), LadderOp::create(S), LadderOp::annihilate(Q),
                            LadderOp::annihilate(P)}});
        }
    }
    return out;
}

inline std::string double_label(std::size_t p, std::size_t q, std::size_t r, std::size_t s) {
    return "d(" + std::to_string(p) + "," + std::to_string(q) + "->" + std::to_string(r) + "," +
           std::to_string(s) + ")";
}

} // namespace detail

/**
 * Spin-adapted excitation list in circuit order: singles ascending by
 * (from, to), then doubles ascending by their canonical (p, q, r, s) key.
 * Closed-shell references only (even electron count).
 */
[[nodiscard]] inline std::vector<Excitation> ucc_excitations(std::size_t n_spatial,
                                                             int n_electrons, bool generalized) {
    if (n_electrons < 0 || static_cast<std::size_t>(n_electrons) > 2 * n_spatial) {
        throw DomainError("electron count " + std::to_string(n_electrons) +
                          " does not fit in " + std::to_string(n_spatial) + " spatial orbitals");
    }
    if (n_electrons % 2 != 0) {
        throw DomainError("UCC ansatz requires a closed-shell (even) electron count");
    }
    const std::size_t n_occ = static_cast<std::size_t>(n_electrons) / 2;
    const std::size_t n_modes = 2 * n_spatial;
    std::vector<Excitation> out;

    auto is_occ = [&](std::size_t p) { return p < n_occ; };
    for (std::size_t p = 0; p < n_spatial; ++p) {
        for (std::size_t q = 0; q < n_spatial; ++q) {
            const bool ok = generalized ? p < q : (is_occ(p) && !is_occ(q));
            if (!ok) {
                continue;
            }
            std::vector<FermionTerm> gen;
            for (int s = 0; s < 2; ++s) {
                gen.push_back({1.0,
                               {LadderOp::create(spin_orbital(q, s)),
                                LadderOp::annihilate(spin_orbital(p, s))}});
            }
            out.push_back(detail::make_excitation(
                "s(" + std::to_string(p) + "->" + std::to_string(q) + ")", std::move(gen),
                n_modes));
        }
    }

    using Key = std::array<std::size_t, 4>;
    auto canonical = [](const Key &k) {
        const auto [p, q, r, s] = k;
        return std::min({k, Key{q, p, s, r}, Key{r, s, p, q}, Key{s, r, q, p}});
    };
    for (std::size_t p = 0; p < n_spatial; ++p) {
        for (std::size_t q = 0; q < n_spatial; ++q) {
            for (std::size_t r = 0; r < n_spatial; ++r) {
                for (std::size_t s = 0; s < n_spatial; ++s) {
                    const Key key{p, q, r, s};
                    if (generalized) {
                        if (r == p && s == q) {
                            continue;
                        }
                    } else if (!(is_occ(p) && is_occ(q) && !is_occ(r) && !is_occ(s))) {
                        continue;
                    }
                    if (canonical(key) != key) {
                        continue;
                    }
                    if (r == q && s == p) {
                        // Exchange pattern; only reachable when generalized and p != q.
                        std::vector<FermionTerm> gen{
                            {1.0,
                             {LadderOp::create(spin_orbital(q, 0)),
                              LadderOp::create(spin_orbital(p, 1)),
                              LadderOp::annihilate(spin_orbital(q, 1)),
                              LadderOp::annihilate(spin_orbital(p, 0))}}};
                        out.push_back(detail::make_excitation(detail::double_label(p, q, r, s),
                                                              std::move(gen), n_modes));
                        continue;
                    }
                    auto ex = detail::make_excitation(detail::double_label(p, q, r, s),
                                                      detail::spin_summed_double(p, q, r, s),
                                                      n_modes);
                    if (!ex.image.empty()) {
                        out.push_back(std::move(ex));
                    }
                }
            }
        }
    }
    return out;
}

/// Appends exp(theta[param] * image) as Trotterized Pauli rotations.
inline void append_excitation(Circuit &c, const PauliSum &image, std::size_t param) {
    c.reserve_params(param + 1);
    for (const auto &t : image.terms()) {
        // image term i*b*P  ->  exp(i theta b P)
        c.append(pauli_evolution(t.string, affine(param, t.coefficient.imag()), c.n_qubits()));
    }
}

/// One first-order Trotter step of UCCSD (or UCCGSD when generalized).
[[nodiscard]] inline Circuit uccsd_ansatz(std::size_t n_spatial, int n_electrons,
                                          bool generalized = false) {
    const auto excitations = ucc_excitations(n_spatial, n_electrons, generalized);
    Circuit c(2 * n_spatial, excitations.size());
    for (std::size_t k = 0; k < excitations.size(); ++k) {
        append_excitation(c, excitations[k].image, k);
    }
    return c;
}

enum class Entangler { CNOT, CU3 };

/**
 * Linear-connectivity hardware-efficient circuit: a U3 on every qubit, then
 * per layer entanglers on (0,1), (1,2), ... followed by another U3 layer.
 * Every U3/CU3 angle is a fresh parameter.
 */
[[nodiscard]] inline Circuit hardware_efficient_ansatz(std::size_t n_qubits, std::size_t layers,
                                                       Entangler entangler) {
    if (n_qubits < 2) {
        throw DomainError("hardware-efficient ansatz needs at least two qubits");
    }
    Circuit c(n_qubits);
    std::size_t next = 0;
    auto fresh3 = [&] {
        std::vector<ParamExpr> p{affine(next), affine(next + 1), affine(next + 2)};
        next += 3;
        return p;
    };
    auto rotation_layer = [&] {
        for (std::uint32_t q = 0; q < n_qubits; ++q) {
            c.add(GateKind::U3, {q}, fresh3());
        }
    };
    rotation_layer();
    for (std::size_t l = 0; l < layers; ++l) {
        for (std::uint32_t q = 0; q + 1 < n_qubits; ++q) {
            if (entangler == Entangler::CNOT) {
                c.add(GateKind::CNOT, {q, q + 1});
            } else {
                c.add(GateKind::CU3, {q, q + 1}, fresh3());
            }
        }
        rotation_layer();
    }
    return c;
}

/// Prepends X gates that turn |0...0> into the given basis state.
[[nodiscard]] inline Circuit reference_preparation(const Bitstring &ref) {
    Circuit c(ref.size());
    for (std::uint32_t q = 0; q < ref.size(); ++q) {
        if (ref[q] != 0) {
            c.add(GateKind::X, {q});
        }
    }
    return c;
}

} // namespace vqesim
