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
 * @file gates.hpp
 * The closed gate set and its matrices.
 *
 * Matrix conventions:
 *   RZ(t)  = exp(-i t Z / 2),  RY(t) = exp(-i t Y / 2)
 *   U3(t, p, l) = [[cos(t/2), -e^{il} sin(t/2)], [e^{ip} sin(t/2), e^{i(p+l)} cos(t/2)]]
 *   HY     = (Z + Y) / sqrt(2) = U3(pi/2, pi/2, pi/2)
 * Two-qubit matrices are 4x4 in the basis |a b> where a is the first listed
 * qubit (the control for CNOT/CU3) and forms the high bit.
 */
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <string_view>

#include "error.hpp"

namespace vqesim {

using Mat2 = std::array<std::complex<double>, 4>;  // row-major 2x2
using Mat4 = std::array<std::complex<double>, 16>; // row-major 4x4

enum class GateKind : std::uint8_t { H, HY, X, CNOT, SWAP, RZ, RY, U3, CU3 };

[[nodiscard]] constexpr std::size_t gate_arity(GateKind k) {
    switch (k) {
    case GateKind::CNOT:
    case GateKind::SWAP:
    case GateKind::CU3:
        return 2;
    default:
        return 1;
    }
}

[[nodiscard]] constexpr std::size_t gate_param_count(GateKind k) {
    switch (k) {
    case GateKind::RZ:
    case GateKind::RY:
        return 1;
    case GateKind::U3:
    case GateKind::CU3:
        return 3;
    default:
        return 0;
    }
}

[[nodiscard]] constexpr std::string_view gate_name(GateKind k) {
    switch (k) {
    case GateKind::H:
        return "h";
    case GateKind::HY:
        return "hy";
    case GateKind::X:
        return "x";
    case GateKind::CNOT:
        return "cx";
    case GateKind::SWAP:
        return "swap";
    case GateKind::RZ:
        return "rz";
    case GateKind::RY:
        return "ry";
    case GateKind::U3:
        return "u3";
    case GateKind::CU3:
        return "cu3";
    }
    return "?";
}

[[nodiscard]] inline GateKind parse_gate_kind(std::string_view name) {
    for (auto k : {GateKind::H, GateKind::HY, GateKind::X, GateKind::CNOT, GateKind::SWAP,
                   GateKind::RZ, GateKind::RY, GateKind::U3, GateKind::CU3}) {
        if (gate_name(k) == name) {
            return k;
        }
    }
    if (name == "cnot") {
        return GateKind::CNOT;
    }
    throw FormatError("unknown gate '" + std::string(name) + "'");
}

namespace gates {

using cd = std::complex<double>;
inline constexpr double kInvSqrt2 = 0.70710678118654752440;

[[nodiscard]] inline Mat2 u3(double t, double p, double l) {
    const double c = std::cos(t / 2);
    const double s = std::sin(t / 2);
    return {cd{c, 0}, -std::polar(s, l), std::polar(s, p), std::polar(c, p + l)};
}

/// d U3 / d(param slot).
[[nodiscard]] inline Mat2 u3_derivative(double t, double p, double l, std::size_t slot) {
    const double c = std::cos(t / 2);
    const double s = std::sin(t / 2);
    const cd i{0, 1};
    switch (slot) {
    case 0:
        return {cd{-s / 2, 0}, -std::polar(c / 2, l), std::polar(c / 2, p),
                -std::polar(s / 2, p + l)};
    case 1:
        return {cd{}, cd{}, i * std::polar(s, p), i * std::polar(c, p + l)};
    default:
        return {cd{}, -i * std::polar(s, l), cd{}, i * std::polar(c, p + l)};
    }
}

[[nodiscard]] inline Mat2 rz(double t) {
    return {std::polar(1.0, -t / 2), cd{}, cd{}, std::polar(1.0, t / 2)};
}
[[nodiscard]] inline Mat2 ry(double t) {
    const double c = std::cos(t / 2);
    const double s = std::sin(t / 2);
    return {cd{c, 0}, cd{-s, 0}, cd{s, 0}, cd{c, 0}};
}

/// Block-diagonal controlled gate diag(I or 0, u) with the control as high bit.
[[nodiscard]] inline Mat4 controlled(const Mat2 &u, bool identity_block = true) {
    Mat4 m{};
    if (identity_block) {
        m[0] = m[5] = 1.0;
    }
    m[10] = u[0];
    m[11] = u[1];
    m[14] = u[2];
    m[15] = u[3];
    return m;
}

} // namespace gates

/// 2x2 matrix of a single-qubit gate.
[[nodiscard]] inline Mat2 matrix_1q(GateKind k, std::span<const double> v) {
    using gates::cd;
    using gates::kInvSqrt2;
    switch (k) {
    case GateKind::H:
        return {cd{kInvSqrt2}, cd{kInvSqrt2}, cd{kInvSqrt2}, cd{-kInvSqrt2}};
    case GateKind::HY:
        return {cd{kInvSqrt2}, cd{0, -kInvSqrt2}, cd{0, kInvSqrt2}, cd{-kInvSqrt2}};
    case GateKind::X:
        return {cd{}, cd{1}, cd{1}, cd{}};
    case GateKind::RZ:
        return gates::rz(v[0]);
    case GateKind::RY:
        return gates::ry(v[0]);
    case GateKind::U3:
        return gates::u3(v[0], v[1], v[2]);
    default:
        throw DomainError("gate '" + std::string(gate_name(k)) + "' is not single-qubit");
    }
}

/// 4x4 matrix of a two-qubit gate.
[[nodiscard]] inline Mat4 matrix_2q(GateKind k, std::span<const double> v) {
    switch (k) {
    case GateKind::CNOT:
        return gates::controlled({0.0, 1.0, 1.0, 0.0});
    case GateKind::SWAP: {
        Mat4 m{};
        m[0] = m[6] = m[9] = m[15] = 1.0;
        return m;
    }
    case GateKind::CU3:
        return gates::controlled(gates::u3(v[0], v[1], v[2]));
    default:
        throw DomainError("gate '" + std::string(gate_name(k)) + "' is not two-qubit");
    }
}

[[nodiscard]] inline Mat2 derivative_1q(GateKind k, std::span<const double> v, std::size_t slot) {
    using gates::cd;
    switch (k) {
    case GateKind::RZ: {
        const auto m = gates::rz(v[0]);
        return {cd{0, -0.5} * m[0], cd{}, cd{}, cd{0, 0.5} * m[3]};
    }
    case GateKind::RY: {
        const double c = std::cos(v[0] / 2);
        const double s = std::sin(v[0] / 2);
        return {cd{-s / 2}, cd{-c / 2}, cd{c / 2}, cd{-s / 2}};
    }
    case GateKind::U3:
        return gates::u3_derivative(v[0], v[1], v[2], slot);
    default:
        throw DomainError("gate '" + std::string(gate_name(k)) + "' has no parameters");
    }
}

[[nodiscard]] inline Mat4 derivative_2q(GateKind k, std::span<const double> v, std::size_t slot) {
    if (k != GateKind::CU3) {
        throw DomainError("gate '" + std::string(gate_name(k)) + "' has no parameters");
    }
    return gates::controlled(gates::u3_derivative(v[0], v[1], v[2], slot), false);
}

[[nodiscard]] inline Mat2 adjoint(const Mat2 &m) {
    return {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
}

[[nodiscard]] inline Mat4 adjoint(const Mat4 &m) {
    Mat4 out{};
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            out[r * 4 + c] = std::conj(m[c * 4 + r]);
        }
    }
    return out;
}

/// Same operator with the two qubits listed in the opposite order.
[[nodiscard]] inline Mat4 swap_qubit_order(const Mat4 &m) {
    constexpr std::array<std::size_t, 4> perm{0, 2, 1, 3};
    Mat4 out{};
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            out[perm[r] * 4 + perm[c]] = m[r * 4 + c];
        }
    }
    return out;
}

} // namespace vqesim
