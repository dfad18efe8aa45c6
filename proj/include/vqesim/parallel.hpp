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
 * @file parallel.hpp
 * Hamiltonian-partitioned expectation values.
 *
 * The evolved state is shared read-only; each worker sums its own subset of
 * terms and the partial sums are reduced in worker order, so the result
 * depends only on the plan, never on thread scheduling.
 */
#pragma once

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <queue>
#include <string>
#include <thread>
#include <vector>

#include "backend.hpp"

namespace vqesim {

struct ExpectationPlan {
    std::size_t n_workers = 1;
    std::vector<std::vector<std::size_t>> partitions; // term indices, ascending
    std::vector<double> costs;                        // per-partition total cost

    [[nodiscard]] double max_cost() const {
        return costs.empty() ? 0.0 : *std::max_element(costs.begin(), costs.end());
    }
};

/// Term cost model: number of non-identity factors (at least 1).
[[nodiscard]] inline double term_cost(const PauliTerm &t) {
    return static_cast<double>(std::max<std::size_t>(1, t.string.weight()));
}

/**
 * Longest-processing-time assignment: terms sorted by descending cost (ties
 * by index) each go to the currently cheapest worker (ties by worker index).
 */
[[nodiscard]] inline ExpectationPlan plan_partition(const PauliSum &h, std::size_t workers) {
    if (workers < 1) {
        throw DomainError("plan_partition needs at least one worker");
    }
    const auto &terms = h.terms();
    std::vector<std::size_t> order(terms.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return term_cost(terms[a]) > term_cost(terms[b]);
    });

    ExpectationPlan plan;
    plan.n_workers = workers;
    plan.partitions.assign(workers, {});
    plan.costs.assign(workers, 0.0);
    using Slot = std::pair<double, std::size_t>;
    std::priority_queue<Slot, std::vector<Slot>, std::greater<>> load;
    for (std::size_t w = 0; w < workers; ++w) {
        load.emplace(0.0, w);
    }
    for (auto idx : order) {
        auto [cost, w] = load.top();
        load.pop();
        plan.partitions[w].push_back(idx);
        cost += term_cost(terms[idx]);
        plan.costs[w] = cost;
        load.emplace(cost, w);
    }
    for (auto &p : plan.partitions) {
        std::sort(p.begin(), p.end());
    }
    return plan;
}

/// Worker count: explicit value if non-zero, else $VQE_WORKERS, else the
/// number of hardware threads.
[[nodiscard]] inline std::size_t resolve_workers(std::size_t requested = 0) {
    if (requested > 0) {
        return requested;
    }
    if (const char *env = std::getenv("VQE_WORKERS"); env != nullptr && *env != '\0') {
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1) {
            throw DomainError(std::string("VQE_WORKERS must be a positive integer, got '") + env +
                              "'");
        }
        return static_cast<std::size_t>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Sum over terms of coefficient * <P>, split over the plan's partitions.
template <class TermFn>
[[nodiscard]] complex_t reduce_terms_parallel(const PauliSum &h, const ExpectationPlan &plan,
                                              TermFn &&term_value) {
    const auto &terms = h.terms();
    std::vector<complex_t> partial(plan.partitions.size(), complex_t{});
    auto work = [&](std::size_t w) {
        complex_t acc{};
        for (auto idx : plan.partitions[w]) {
            acc += terms[idx].coefficient * term_value(terms[idx].string);
        }
        partial[w] = acc;
    };
    if (plan.partitions.size() <= 1) {
        if (!plan.partitions.empty()) {
            work(0);
        }
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(plan.partitions.size());
        pool.reserve(plan.partitions.size() - 1);
        for (std::size_t w = 1; w < plan.partitions.size(); ++w) {
            pool.emplace_back([&, w] {
                try {
                    work(w);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        try {
            work(0);
        } catch (...) {
            errors[0] = std::current_exception();
        }
        for (auto &t : pool) {
            t.join();
        }
        for (auto &e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    }
    complex_t total{};
    for (const auto &p : partial) {
        total += p;
    }
    return total;
}

[[nodiscard]] inline double expectation_parallel(const State &s, const PauliSum &h,
                                                 const ExpectationPlan &plan) {
    if (!is_hermitian(h)) {
        throw DomainError("expectation requires a Hermitian observable");
    }
    std::size_t covered = 0;
    for (const auto &p : plan.partitions) {
        covered += p.size();
    }
    if (covered != h.size()) {
        throw DomainError("expectation plan does not cover the Hamiltonian's terms");
    }
    const complex_t acc =
        reduce_terms_parallel(h, plan, [&](const PauliString &p) { return term_expectation(s, p); });
    if (std::abs(acc.imag()) > 1e-10) {
        throw NumericalError("expectation of a Hermitian observable has imaginary part " +
                             std::to_string(acc.imag()));
    }
    return acc.real();
}

/// Serial expectation (a one-worker plan).
[[nodiscard]] inline double expectation(const State &s, const PauliSum &h) {
    return expectation_parallel(s, h, plan_partition(h, 1));
}

} // namespace vqesim
