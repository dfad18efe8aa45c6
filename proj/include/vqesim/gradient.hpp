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
 * @file gradient.hpp
 * Backend-agnostic gradients from energy evaluations: the parameter-shift
 * rule for RZ/RY occurrences and central finite differences.
 */
#pragma once

#include <numbers>
#include <span>
#include <vector>

#include "circuit.hpp"

namespace vqesim {

inline constexpr double kShiftFallbackStep = 1e-6;

struct ShiftGradient {
    std::vector<double> gradient;
    bool used_finite_difference = false; // some parameter fed a U3/CU3 gate
};

/**
 * Parameter-shift gradient. `energy` maps a bound circuit to a real
 * expectation. Each RZ/RY occurrence of an affine parameter is shifted by
 * +-pi/2 on its own and contributes scale * (E+ - E-) / 2. Parameters that
 * feed any U3/CU3 gate are differentiated by central differences in theta
 * with step 1e-6 instead, and the result is flagged.
 */
template <class Energy>
[[nodiscard]] ShiftGradient parameter_shift_gradient(const Circuit &c,
                                                     std::span<const double> theta,
                                                     Energy &&energy) {
    ShiftGradient out;
    out.gradient.assign(c.n_params(), 0.0);
    const BoundCircuit base = bind_circuit(c, theta);

    std::vector<bool> needs_fd(c.n_params(), false);
    for (const auto &g : c.gates()) {
        if (g.kind != GateKind::U3 && g.kind != GateKind::CU3) {
            continue;
        }
        for (const auto &p : g.params) {
            if (const auto *a = std::get_if<AffineParam>(&p)) {
                needs_fd[a->index] = true;
            }
        }
    }

    constexpr double shift = std::numbers::pi / 2;
    BoundCircuit shifted = base;
    for (std::size_t k = 0; k < c.size(); ++k) {
        const Gate &g = c.gates()[k];
        if (g.kind != GateKind::RZ && g.kind != GateKind::RY) {
            continue;
        }
        const auto *a = std::get_if<AffineParam>(&g.params[0]);
        if (a == nullptr || needs_fd[a->index]) {
            continue;
        }
        const double v = base.gates[k].values[0];
        shifted.gates[k].values[0] = v + shift;
        const double plus = energy(static_cast<const BoundCircuit &>(shifted));
        shifted.gates[k].values[0] = v - shift;
        const double minus = energy(static_cast<const BoundCircuit &>(shifted));
        shifted.gates[k].values[0] = v;
        out.gradient[a->index] += a->scale * (plus - minus) / 2.0;
    }

    std::vector<double> t(theta.begin(), theta.end());
    for (std::size_t i = 0; i < c.n_params(); ++i) {
        if (!needs_fd[i]) {
            continue;
        }
        out.used_finite_difference = true;
        t[i] = theta[i] + kShiftFallbackStep;
        const double plus = energy(bind_circuit(c, t));
        t[i] = theta[i] - kShiftFallbackStep;
        const double minus = energy(bind_circuit(c, t));
        t[i] = theta[i];
        out.gradient[i] = (plus - minus) / (2.0 * kShiftFallbackStep);
    }
    return out;
}

/// Central finite-difference gradient of f(theta).
template <class Fn>
[[nodiscard]] std::vector<double> finite_difference_gradient(Fn &&f, std::span<const double> theta,
                                                             double step) {
    std::vector<double> t(theta.begin(), theta.end());
    std::vector<double> g(t.size(), 0.0);
    for (std::size_t i = 0; i < t.size(); ++i) {
        t[i] = theta[i] + step;
        const double plus = f(std::span<const double>(t));
        t[i] = theta[i] - step;
        const double minus = f(std::span<const double>(t));
        t[i] = theta[i];
        g[i] = (plus - minus) / (2.0 * step);
    }
    return g;
}

} // namespace vqesim
