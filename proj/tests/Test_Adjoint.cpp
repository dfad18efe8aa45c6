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
#include "pch.hpp"

using namespace vqesim;
using oracle::ps;
using Catch::Matchers::WithinAbs;

namespace {

double max_abs_diff(const std::vector<double> &a, const std::vector<double> &b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

double relative_error(const std::vector<double> &got, const std::vector<double> &ref) {
    double scale = 1.0;
    for (double v : ref) {
        scale = std::max(scale, std::abs(v));
    }
    return max_abs_diff(got, ref) / scale;
}

std::vector<double> random_theta(std::mt19937_64 &rng, std::size_t n) {
    std::uniform_real_distribution<double> d(-std::numbers::pi, std::numbers::pi);
    std::vector<double> t(n);
    for (auto &v : t) {
        v = d(rng);
    }
    return t;
}

} // namespace

TEST_CASE("Adjoint::RZ on |+> with H = X", "[Adjoint]") {
    Circuit c(1);
    c.add(GateKind::H, {0});
    c.add(GateKind::RZ, {0}, {affine(0)});
    const PauliSum h(1.0, ps("X0"));
    for (double t : {-1.3, 0.0, 0.4, std::numbers::pi / 2}) {
        const std::vector<double> theta{t};
        const auto r = reverse_gradient_full(c, theta, h, StateVector(1));
        CHECK_THAT(r.value, WithinAbs(std::cos(t), 1e-15));
        CHECK_THAT(r.gradient[0], WithinAbs(-std::sin(t), 1e-15));
    }
}

TEST_CASE("Adjoint::constant observable has zero gradient", "[Adjoint]") {
    std::mt19937_64 rng(101);
    const auto c = oracle::random_circuit(rng, 3, 30, true);
    const auto theta = random_theta(rng, c.n_params());
    const auto g = reverse_gradient(c, theta, PauliSum::identity(2.5), StateVector(3));
    REQUIRE(g.size() == c.n_params());
    for (double v : g) {
        REQUIRE(std::abs(v) < 1e-14);
    }
}

TEST_CASE("Adjoint::non-Hermitian observable", "[Adjoint]") {
    Circuit c(1);
    c.add(GateKind::RY, {0}, {affine(0)});
    CHECK_THROWS_AS(reverse_gradient(c, std::vector<double>{0.1}, PauliSum(complex_t{0, 1}, ps("Z0")),
                                     StateVector(1)),
                    DomainError);
}

TEST_CASE("Adjoint::H2 UCCSD matches central differences", "[Adjoint]") {
    const auto h = qubit_hamiltonian(load_fcidump_file(oracle::data_path("h2_sto3g_0.7414.fcidump")));
    const auto c = uccsd_ansatz(2, 2);
    const auto s0 = sv::init(hf_reference(2, 4));
    std::mt19937_64 rng(103);
    for (int trial = 0; trial < 5; ++trial) {
        const auto theta = random_theta(rng, c.n_params());
        const auto g = reverse_gradient(c, theta, h, s0);
        const auto fd = oracle::central_difference(
            [&](const std::vector<double> &t) { return oracle::dense_energy(c, t, h, 0b0011); }, theta,
            1e-5);
        REQUIRE(relative_error(g, fd) < 1e-6);
    }
}

TEST_CASE("Adjoint::random circuits over the full gate set", "[Adjoint][property]") {
    std::mt19937_64 rng(107);
    for (int trial = 0; trial < 15; ++trial) {
        const std::size_t n = 2 + trial % 5;
        const auto c = oracle::random_circuit(rng, n, 25, true);
        const auto h = oracle::random_sum(rng, n, 6, true);
        const auto theta = random_theta(rng, c.n_params());
        const auto g = reverse_gradient(c, theta, h, StateVector(n));
        const auto fd = oracle::central_difference(
            [&](const std::vector<double> &t) { return oracle::dense_energy(c, t, h, 0); }, theta, 1e-5);
        REQUIRE(relative_error(g, fd) < 1e-6);
    }
}

TEST_CASE("Adjoint::shared parameter sums the per-gate partials", "[Adjoint]") {
    Circuit shared(2);
    shared.add(GateKind::H, {0});
    shared.add(GateKind::RY, {0}, {affine(0, 0.7, 0.1)});
    shared.add(GateKind::CNOT, {0, 1});
    shared.add(GateKind::RZ, {1}, {affine(0, -1.3)});
    shared.add(GateKind::H, {1});

    // Same circuit with independent parameters: d/dt f(t, t) = f_1 + f_2.
    Circuit split(2);
    split.add(GateKind::H, {0});
    split.add(GateKind::RY, {0}, {affine(0, 0.7, 0.1)});
    split.add(GateKind::CNOT, {0, 1});
    split.add(GateKind::RZ, {1}, {affine(1, -1.3)});
    split.add(GateKind::H, {1});

    PauliSum h;
    h.add(0.6, ps("Z0 X1"));
    h.add(-0.4, ps("Y0"));
    h.add(0.9, ps("X1"));
    const double t = 0.83;
    const auto g = reverse_gradient(shared, std::vector<double>{t}, h, StateVector(2));
    const auto parts = reverse_gradient(split, std::vector<double>{t, t}, h, StateVector(2));
    CHECK_THAT(g[0], WithinAbs(parts[0] + parts[1], 1e-14));
    const auto fd = oracle::central_difference(
        [&](const std::vector<double> &x) { return oracle::dense_energy(shared, x, h, 0); },
        std::vector<double>{t}, 1e-5);
    CHECK_THAT(g[0], WithinAbs(fd[0], 1e-9));
}

TEST_CASE("Adjoint::observable vector is never renormalised", "[Adjoint]") {
    std::mt19937_64 rng(109);
    const auto c = oracle::random_circuit(rng, 3, 20, true);
    PauliSum h;
    h.add(3.0, ps("Z0"));
    h.add(2.0, ps("X1 X2"));
    const auto theta = random_theta(rng, c.n_params());
    const auto r = reverse_gradient_full(c, theta, h, StateVector(3));
    const auto psi = sv::evolve(StateVector(3), bind_circuit(c, theta));
    const double expect = sv::apply_pauli_sum(psi, h).norm();
    CHECK(expect > 1.5);
    CHECK_THAT(r.adjoint_norm, WithinAbs(expect, 1e-12));
}

TEST_CASE("Adjoint::agrees with parameter shift on RZ/RY circuits", "[Adjoint][property]") {
    std::mt19937_64 rng(113);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + trial % 6;
        const auto c = oracle::random_rotation_circuit(rng, n, 30, 4);
        const auto h = oracle::random_sum(rng, n, 8, true);
        const auto theta = random_theta(rng, c.n_params());
        const auto g = reverse_gradient(c, theta, h, StateVector(n));
        const auto shift = parameter_shift_gradient(
            c, theta, [&](const BoundCircuit &b) { return sv::expectation(sv::evolve(StateVector(n), b), h); });
        REQUIRE_FALSE(shift.used_finite_difference);
        REQUIRE(max_abs_diff(g, shift.gradient) < 1e-10);
    }
}

TEST_CASE("Gradient::parameter shift example and fallback", "[Adjoint]") {
    Circuit c(1);
    c.add(GateKind::H, {0});
    c.add(GateKind::RZ, {0}, {affine(0)});
    const PauliSum x(1.0, ps("X0"));
    const double t = 0.7;
    const auto energy = [&](const BoundCircuit &b) { return sv::expectation(sv::evolve(StateVector(1), b), x); };
    const auto g = parameter_shift_gradient(c, std::vector<double>{t}, energy);
    CHECK_THAT(g.gradient[0], WithinAbs(-std::sin(t), 1e-15));
    CHECK_FALSE(g.used_finite_difference);

    Circuit u(1);
    u.add(GateKind::U3, {0}, {affine(0), constant(0.2), constant(0.3)});
    u.add(GateKind::RY, {0}, {affine(1)});
    const std::vector<double> theta{0.4, -0.9};
    const auto gu = parameter_shift_gradient(u, theta, energy);
    CHECK(gu.used_finite_difference);
    const auto ref = reverse_gradient(u, theta, x, StateVector(1));
    CHECK_THAT(gu.gradient[0], WithinAbs(ref[0], 1e-8));
    CHECK_THAT(gu.gradient[1], WithinAbs(ref[1], 1e-12));
}

TEST_CASE("Gradient::finite_difference_gradient", "[Adjoint]") {
    const auto f = [](std::span<const double> x) { return x[0] * x[0] + 3 * x[1]; };
    const std::vector<double> x{1.5, -2.0};
    const auto g = finite_difference_gradient(f, x, 1e-4);
    CHECK_THAT(g[0], WithinAbs(3.0, 1e-9));
    CHECK_THAT(g[1], WithinAbs(3.0, 1e-9));
}
