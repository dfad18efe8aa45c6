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
 * @file adjoint.hpp
 * Reverse-mode (adjoint) gradients on the state-vector backend.
 *
 * One forward pass gives |psi>; the observable is applied once to get
 * |l> = O|psi>, |r> = |psi>. Sweeping the gates backwards, both vectors are
 * unwound by U_k^dagger and each parametric slot contributes
 * 2 Re <l| dU_k |r> times the affine scale of its parameter.
 */
#pragma once

#include <complex>
#include <span>
#include <vector>

#include "circuit.hpp"
#include "statevector.hpp"

namespace vqesim {

struct AdjointResult {
    double value = 0.0;         // <psi|O|psi>
    std::vector<double> gradient;
    double adjoint_norm = 0.0;  // ||l|| after the sweep; equals ||O psi||, never renormalised
};

namespace detail {

/// <l| M_q |r> for a 2x2 matrix on qubit q.
inline complex_t sandwich_1q(const StateVector &l, const Mat2 &m, const StateVector &r,
                             std::uint32_t q) {
    const auto a = l.amplitudes();
    const auto b = r.amplitudes();
    const std::size_t stride = std::size_t{1} << q;
    complex_t acc{};
    for (std::size_t base = 0; base < a.size(); base += 2 * stride) {
        for (std::size_t off = 0; off < stride; ++off) {
            const std::size_t i0 = base + off;
            const std::size_t i1 = i0 + stride;
            acc += std::conj(a[i0]) * (m[0] * b[i0] + m[1] * b[i1]) +
                   std::conj(a[i1]) * (m[2] * b[i0] + m[3] * b[i1]);
        }
    }
    return acc;
}

inline complex_t sandwich_2q(const StateVector &l, const Mat4 &m, const StateVector &r,
                             std::uint32_t qa, std::uint32_t qb) {
    const auto a = l.amplitudes();
    const auto b = r.amplitudes();
    const std::size_t ba = std::size_t{1} << qa;
    const std::size_t bb = std::size_t{1} << qb;
    complex_t acc{};
    for (std::size_t i = 0; i < a.size(); ++i) {
        if ((i & ba) != 0 || (i & bb) != 0) {
            continue;
        }
        const std::size_t idx[4] = {i, i | bb, i | ba, i | ba | bb};
        for (std::size_t row = 0; row < 4; ++row) {
            complex_t v{};
            for (std::size_t col = 0; col < 4; ++col) {
                v += m[row * 4 + col] * b[idx[col]];
            }
            acc += std::conj(a[idx[row]]) * v;
        }
    }
    return acc;
}

} // namespace detail

/**
 * Adjoint gradient of f(theta) = <psi(theta)|O|psi(theta)> with
 * |psi(theta)> = U(theta)|s0>. `apply_observable` maps a state to O|state>
 * for a Hermitian O, which lets callers differentiate penalised objectives.
 */
template <class ApplyObservable>
[[nodiscard]] AdjointResult reverse_gradient_with(const Circuit &c, std::span<const double> theta,
                                                  const StateVector &s0,
                                                  ApplyObservable &&apply_observable) {
    const BoundCircuit bound = bind_circuit(c, theta);
    StateVector r = sv::evolve(s0, bound);
    StateVector l = apply_observable(r);

    AdjointResult out;
    out.value = r.inner(l).real();
    out.gradient.assign(c.n_params(), 0.0);

    for (std::size_t k = c.size(); k-- > 0;) {
        const Gate &g = c.gates()[k];
        const BoundGate &b = bound.gates[k];
        r.apply(b, /*adjoint_gate=*/true);
        for (std::size_t slot = 0; slot < g.params.size(); ++slot) {
            const auto *a = std::get_if<AffineParam>(&g.params[slot]);
            if (a == nullptr) {
                continue;
            }
            complex_t z;
            if (gate_arity(g.kind) == 1) {
                z = detail::sandwich_1q(l, derivative_1q(g.kind, b.params(), slot), r, b.qubits[0]);
            } else {
                z = detail::sandwich_2q(l, derivative_2q(g.kind, b.params(), slot), r, b.qubits[0],
                                        b.qubits[1]);
            }
            out.gradient[a->index] += a->scale * 2.0 * z.real();
        }
        l.apply(b, /*adjoint_gate=*/true);
    }
    out.adjoint_norm = l.norm();
    return out;
}

[[nodiscard]] inline AdjointResult reverse_gradient_full(const Circuit &c,
                                                         std::span<const double> theta,
                                                         const PauliSum &h, const StateVector &s0) {
    if (!is_hermitian(h)) {
        throw DomainError("reverse_gradient requires a Hermitian observable");
    }
    return reverse_gradient_with(c, theta, s0,
                                 [&](const StateVector &s) { return sv::apply_pauli_sum(s, h); });
}

/// Gradient of <psi(theta)|h|psi(theta)> for |psi(theta)> = c(theta)|s0>.
[[nodiscard]] inline std::vector<double> reverse_gradient(const Circuit &c,
                                                          std::span<const double> theta,
                                                          const PauliSum &h, const StateVector &s0) {
    return reverse_gradient_full(c, theta, h, s0).gradient;
}

} // namespace vqesim
