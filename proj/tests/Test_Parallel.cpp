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

#include <cstdlib>
#include <numeric>

using namespace vqesim;
using oracle::ps;

namespace {

PauliSum h2() {
    return qubit_hamiltonian(load_fcidump_file(oracle::data_path("h2_sto3g_0.7414.fcidump")));
}

void require_exact_cover(const ExpectationPlan &plan, std::size_t n_terms) {
    std::vector<int> seen(n_terms, 0);
    for (const auto &p : plan.partitions) {
        REQUIRE(std::is_sorted(p.begin(), p.end()));
        for (auto i : p) {
            REQUIRE(i < n_terms);
            ++seen[i];
        }
    }
    for (int s : seen) {
        REQUIRE(s == 1);
    }
}

double total_cost(const PauliSum &h) {
    double t = 0.0;
    for (const auto &term : h.terms()) {
        t += term_cost(term);
    }
    return t;
}

/// Optimal makespan by exhaustive search over worker assignments.
double brute_force_makespan(const std::vector<double> &costs, std::size_t w) {
    std::size_t combos = 1;
    for (std::size_t i = 0; i < costs.size(); ++i) {
        combos *= w;
    }
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> load(w);
    for (std::size_t code = 0; code < combos; ++code) {
        std::fill(load.begin(), load.end(), 0.0);
        std::size_t c = code;
        for (double cost : costs) {
            load[c % w] += cost;
            c /= w;
        }
        best = std::min(best, *std::max_element(load.begin(), load.end()));
    }
    return best;
}

struct EnvGuard {
    EnvGuard() { unsetenv("VQE_WORKERS"); }
    ~EnvGuard() { unsetenv("VQE_WORKERS"); }
};

} // namespace

TEST_CASE("Parallel::term_cost examples", "[Parallel]") {
    CHECK(term_cost({1.0, PauliString{}}) == 1.0);
    CHECK(term_cost({1.0, ps("X0 Y1 Z2")}) == 3.0);
}

TEST_CASE("Parallel::plan_partition examples", "[Parallel]") {
    PauliSum h;
    for (const char *s : {"Z0", "Z1", "Z2", "Z3"}) {
        h.add(1.0, ps(s));
    }
    const auto two = plan_partition(h, 2);
    REQUIRE(two.partitions.size() == 2);
    CHECK(two.partitions[0].size() == 2);
    CHECK(two.partitions[1].size() == 2);
    CHECK(two.costs == std::vector<double>{2.0, 2.0});

    const auto one = plan_partition(h, 1);
    CHECK(one.partitions[0] == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK(one.max_cost() == 4.0);

    const auto many = plan_partition(h, 6);
    CHECK(many.partitions.size() == 6);
    require_exact_cover(many, 4);

    CHECK_THROWS_AS(plan_partition(h, 0), DomainError);
}

TEST_CASE("Parallel::H2 plan meets the list-scheduling bound", "[Parallel]") {
    const auto h = h2();
    const auto plan = plan_partition(h, 4);
    require_exact_cover(plan, h.size());
    double max_term = 0.0;
    for (const auto &t : h.terms()) {
        max_term = std::max(max_term, term_cost(t));
    }
    CHECK(plan.max_cost() <= total_cost(h) / 4.0 + max_term);
}

TEST_CASE("Parallel::LPT is within 4/3 of the optimal makespan", "[Parallel][property]") {
    std::mt19937_64 rng(181);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t w = 2 + trial % 3;
        const std::size_t n_terms = 3 + trial % 6;
        const auto h = oracle::random_sum(rng, 6, n_terms, true);
        const auto plan = plan_partition(h, w);
        require_exact_cover(plan, h.size());
        std::vector<double> costs;
        for (const auto &t : h.terms()) {
            costs.push_back(term_cost(t));
        }
        const double opt = brute_force_makespan(costs, w);
        const double bound = (4.0 / 3.0 - 1.0 / (3.0 * static_cast<double>(w))) * opt;
        REQUIRE(plan.max_cost() <= bound + 1e-12);
    }
}

TEST_CASE("Parallel::partitions are disjoint, exhaustive and balanced", "[Parallel][property]") {
    std::mt19937_64 rng(191);
    for (int trial = 0; trial < 40; ++trial) {
        const auto h = oracle::random_sum(rng, 10, 1 + trial * 3, true);
        for (std::size_t w = 1; w <= 16; w *= 2) {
            const auto plan = plan_partition(h, w);
            REQUIRE(plan.partitions.size() == w);
            require_exact_cover(plan, h.size());
            REQUIRE(plan.max_cost() <= total_cost(h) / static_cast<double>(w) + 10.0);
        }
    }
}

TEST_CASE("Parallel::energies agree across worker counts", "[Parallel][property]") {
    const auto h = h2();
    const auto c = uccsd_ansatz(2, 2);
    const std::vector<double> theta{0.3, -0.7};
    const auto ref = hf_reference(2, 4);
    for (auto kind : {BackendKind::SV, BackendKind::MPS}) {
        const auto s = prepare_state(BackendConfig{kind, 16}, ref, bind_circuit(c, theta));
        const double e1 = expectation_parallel(s, h, plan_partition(h, 1));
        for (std::size_t w : {2u, 4u, 8u}) {
            REQUIRE(std::abs(expectation_parallel(s, h, plan_partition(h, w)) - e1) < 1e-12);
        }
    }

    std::mt19937_64 rng(193);
    for (int trial = 0; trial < 10; ++trial) {
        const auto hr = oracle::random_sum(rng, 8, 40, true);
        const State s = sv::evolve(StateVector(8), bind_constants(oracle::random_circuit(rng, 8, 40)));
        const double e1 = expectation_parallel(s, hr, plan_partition(hr, 1));
        for (std::size_t w : {2u, 4u, 8u}) {
            REQUIRE(std::abs(expectation_parallel(s, hr, plan_partition(hr, w)) - e1) < 1e-12);
        }
    }
}

TEST_CASE("Parallel::expectation_parallel edge cases", "[Parallel]") {
    const State s = StateVector(2);
    const PauliSum empty;
    CHECK(expectation_parallel(s, empty, plan_partition(empty, 4)) == 0.0);

    const auto h = PauliSum(1.0, ps("Z0")) + PauliSum(0.5, ps("X1"));
    CHECK_THROWS_AS(expectation_parallel(s, h, plan_partition(PauliSum(1.0, ps("Z0")), 2)),
                    DomainError);
    CHECK_THROWS_AS(expectation_parallel(s, PauliSum(complex_t{0, 1}, ps("Z0")),
                                         plan_partition(PauliSum(1.0, ps("Z0")), 1)),
                    DomainError);
    CHECK(expectation(s, h) == 1.0);
}

TEST_CASE("Parallel::resolve_workers precedence", "[Parallel]") {
    EnvGuard guard;
    CHECK(resolve_workers(3) == 3);
    CHECK(resolve_workers(0) >= 1);
    setenv("VQE_WORKERS", "5", 1);
    CHECK(resolve_workers(0) == 5);
    CHECK(resolve_workers(2) == 2);
    setenv("VQE_WORKERS", "zero", 1);
    CHECK_THROWS_AS(resolve_workers(0), DomainError);
    setenv("VQE_WORKERS", "0", 1);
    CHECK_THROWS_AS(resolve_workers(0), DomainError);
}
