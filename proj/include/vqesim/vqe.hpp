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
 * @file vqe.hpp
 * Variational drivers: plain VQE, ADAPT-VQE and variational quantum
 * deflation (VQD) for excited states.
 *
 * Every driver minimises
 *
 *   f(theta) = <psi(theta)|H|psi(theta)> + alpha * sum_j |<psi_j|psi(theta)>|^2
 *
 * (no deflation terms for plain VQE) with |psi(theta)> = U(theta)|ref>.
 * Gradients are reverse-mode on the state-vector backend and parameter-shift
 * on the MPS backend.
 */
#pragma once

#include <chrono>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "adjoint.hpp"
#include "ansatz.hpp"
#include "backend.hpp"
#include "gradient.hpp"
#include "optimize.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace vqesim {

enum class OptimizerKind { Gradient, Simplex };

[[nodiscard]] inline OptimizerKind parse_optimizer(const std::string &s) {
    if (s == "gradient") {
        return OptimizerKind::Gradient;
    }
    if (s == "simplex") {
        return OptimizerKind::Simplex;
    }
    throw DomainError("unknown optimizer '" + s + "' (expected gradient or simplex)");
}

struct VqeOptions {
    BackendConfig backend;
    OptimizerKind optimizer = OptimizerKind::Gradient;
    OptimizerOptions optimizer_options;
};

struct VqeResult {
    double energy = 0.0;
    std::vector<double> theta;
    std::size_t iterations = 0;
    std::vector<HistoryEntry> history;
    bool converged = false;
    std::string reason;
    BackendKind backend = BackendKind::SV;
    double wall_time_s = 0.0;
    std::vector<double> truncation_log; // MPS only: final-state evolution
    bool gradient_fallback = false;     // finite differences replaced parameter shift
    double objective = 0.0;             // f(theta) including deflation terms
};

/// Previously found states and the penalty weight applied to overlaps with them.
struct DeflationSet {
    std::vector<State> states;
    double alpha = 0.0;
};

namespace detail {

class VariationalProblem {
  public:
    VariationalProblem(const PauliSum &h, const Circuit &ansatz, const Bitstring &ref,
                       const VqeOptions &opt, const DeflationSet &deflation)
        : h_(h), ansatz_(ansatz), ref_(ref), opt_(opt), deflation_(deflation),
          plan_(plan_partition(h, resolve_workers(opt.backend.workers))) {
        if (!is_hermitian(h)) {
            throw DomainError("VQE requires a Hermitian Hamiltonian");
        }
        if (h.min_qubits() > ansatz.n_qubits()) {
            throw DomainError("Hamiltonian acts on more qubits than the ansatz provides");
        }
        if (ref.size() != ansatz.n_qubits()) {
            throw DomainError("reference bitstring length does not match the ansatz register");
        }
        if (deflation.alpha < 0.0 || !std::isfinite(deflation.alpha)) {
            throw DomainError("deflation weight alpha must be finite and non-negative");
        }
        for (const auto &s : deflation.states) {
            if ((s.index() == 0) != (opt.backend.kind == BackendKind::SV)) {
                throw DomainError("deflation states must come from the active backend");
            }
        }
    }

    [[nodiscard]] State state(const BoundCircuit &b) const {
        return prepare_state(opt_.backend, ref_, b);
    }
    [[nodiscard]] State state(std::span<const double> theta) const {
        return state(bind_circuit(ansatz_, theta));
    }

    [[nodiscard]] double energy(const State &s) const { return expectation_parallel(s, h_, plan_); }

    [[nodiscard]] double penalty(const State &s) const {
        double p = 0.0;
        for (const auto &prev : deflation_.states) {
            p += std::norm(overlap(prev, s));
        }
        return deflation_.alpha * p;
    }

    [[nodiscard]] double objective(const State &s) const {
        double f = energy(s);
        if (!deflation_.states.empty()) {
            f += penalty(s);
        }
        return f;
    }

    [[nodiscard]] double objective(std::span<const double> theta) const {
        return objective(state(theta));
    }

    double value_and_gradient(std::span<const double> theta, std::vector<double> &g) {
        if (opt_.backend.kind == BackendKind::SV) {
            const auto s0 = sv::init(ref_);
            auto r = reverse_gradient_with(ansatz_, theta, s0, [&](const StateVector &psi) {
                StateVector out = sv::apply_pauli_sum(psi, h_);
                auto amps = out.amplitudes();
                for (const auto &prev : deflation_.states) {
                    const auto &phi = std::get<StateVector>(prev);
                    const complex_t c = deflation_.alpha * phi.inner(psi);
                    const auto pa = phi.amplitudes();
                    for (std::size_t i = 0; i < amps.size(); ++i) {
                        amps[i] += c * pa[i];
                    }
                }
                return out;
            });
            g = std::move(r.gradient);
            return r.value;
        }
        auto sg = parameter_shift_gradient(ansatz_, theta, [&](const BoundCircuit &b) {
            return objective(state(b));
        });
        fallback_ = fallback_ || sg.used_finite_difference;
        g = std::move(sg.gradient);
        return objective(theta);
    }

    [[nodiscard]] bool used_fallback() const { return fallback_; }
    [[nodiscard]] const Circuit &ansatz() const { return ansatz_; }

  private:
    const PauliSum &h_;
    const Circuit &ansatz_;
    const Bitstring &ref_;
    const VqeOptions &opt_;
    const DeflationSet &deflation_;
    ExpectationPlan plan_;
    bool fallback_ = false;
};

inline VqeResult minimize(const PauliSum &h, const Circuit &ansatz, const Bitstring &ref,
                          const VqeOptions &opt, std::vector<double> theta0,
                          const DeflationSet &deflation) {
    const auto start = std::chrono::steady_clock::now();
    if (theta0.empty()) {
        theta0.assign(ansatz.n_params(), 0.0);
    }
    if (theta0.size() != ansatz.n_params()) {
        throw DomainError("initial parameter vector has length " + std::to_string(theta0.size()) +
                          ", ansatz expects " + std::to_string(ansatz.n_params()));
    }
    VariationalProblem prob(h, ansatz, ref, opt, deflation);
    OptimizeResult o;
    if (opt.optimizer == OptimizerKind::Gradient) {
        o = lbfgs_minimize(
            [&](std::span<const double> x, std::vector<double> &g) {
                return prob.value_and_gradient(x, g);
            },
            std::move(theta0), opt.optimizer_options);
    } else {
        o = nelder_mead_minimize([&](std::span<const double> x) { return prob.objective(x); },
                                 std::move(theta0), opt.optimizer_options);
    }

    VqeResult r;
    const State final_state = prob.state(o.x);
    r.energy = prob.energy(final_state);
    r.objective = deflation.states.empty() ? r.energy : r.energy + prob.penalty(final_state);
    if (!std::isfinite(r.energy)) {
        throw NumericalError("final energy is not finite");
    }
    r.theta = std::move(o.x);
    r.iterations = o.iterations;
    r.history = std::move(o.history);
    r.converged = o.converged;
    r.reason = std::move(o.reason);
    r.backend = opt.backend.kind;
    r.gradient_fallback = prob.used_fallback();
    if (const auto *m = std::get_if<MpsState>(&final_state)) {
        r.truncation_log = m->truncation_log();
    }
    r.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

} // namespace detail

/// Ground-state VQE from theta0 (all zeros when empty).
[[nodiscard]] inline VqeResult vqe_minimize(const PauliSum &h, const Circuit &ansatz,
                                            const Bitstring &ref, const VqeOptions &opt = {},
                                            std::vector<double> theta0 = {}) {
    return detail::minimize(h, ansatz, ref, opt, std::move(theta0), {});
}

/// Final state of an ansatz at theta on the configured backend.
[[nodiscard]] inline State ansatz_state(const Circuit &ansatz, std::span<const double> theta,
                                        const Bitstring &ref, const BackendConfig &cfg) {
    return prepare_state(cfg, ref, bind_circuit(ansatz, theta));
}

// ---------------------------------------------------------------------------
// ADAPT-VQE

/// Anti-Hermitian generators the ADAPT loop may append.
struct OperatorPool {
    std::vector<Excitation> operators;

    [[nodiscard]] std::size_t size() const { return operators.size(); }
};

[[nodiscard]] inline OperatorPool ucc_pool(std::size_t n_spatial, int n_electrons,
                                           bool generalized = false) {
    return {ucc_excitations(n_spatial, n_electrons, generalized)};
}

struct AdaptResult {
    VqeResult result;
    Circuit ansatz;
    std::vector<std::size_t> selected;         // pool indices in order of selection
    std::vector<double> selection_gradients;   // |<[H, A]>| of each selected operator
    double final_max_gradient = 0.0;
};

/// |<psi|[H, A_k]|psi>| for every pool operator.
[[nodiscard]] inline std::vector<double> adapt_gradients(const std::vector<PauliSum> &commutators,
                                                         const State &s) {
    std::vector<double> g;
    g.reserve(commutators.size());
    for (const auto &c : commutators) {
        g.push_back(std::abs(expectation(s, c)));
    }
    return g;
}

[[nodiscard]] inline AdaptResult adapt_vqe(const PauliSum &h, const OperatorPool &pool,
                                           const Bitstring &ref, const VqeOptions &opt = {},
                                           double grad_eps = 1e-5, std::size_t max_ops = 10) {
    if (pool.operators.empty()) {
        throw DomainError("ADAPT-VQE needs a non-empty operator pool");
    }
    std::vector<PauliSum> commutators;
    for (const auto &op : pool.operators) {
        for (const auto &t : op.image.terms()) {
            if (std::abs(t.coefficient.real()) > 1e-12) {
                throw DomainError("pool operator " + op.label + " is not anti-Hermitian");
            }
        }
        commutators.push_back(commutator(h, op.image));
    }

    const auto start = std::chrono::steady_clock::now();
    AdaptResult out;
    out.ansatz = Circuit(ref.size());
    std::vector<double> theta;
    VqeResult current = vqe_minimize(h, out.ansatz, ref, opt);
    while (true) {
        const State s = ansatz_state(out.ansatz, current.theta, ref, opt.backend);
        const auto grads = adapt_gradients(commutators, s);
        const auto best = static_cast<std::size_t>(
            std::max_element(grads.begin(), grads.end()) - grads.begin());
        out.final_max_gradient = grads[best];
        if (grads[best] < grad_eps || out.selected.size() >= max_ops) {
            break;
        }
        out.selected.push_back(best);
        out.selection_gradients.push_back(grads[best]);
        const std::size_t param = out.ansatz.n_params();
        append_excitation(out.ansatz, pool.operators[best].image, param);
        theta = current.theta;
        theta.push_back(0.0);
        current = vqe_minimize(h, out.ansatz, ref, opt, theta);
    }
    current.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.result = std::move(current);
    return out;
}

// ---------------------------------------------------------------------------
// VQD

struct VqdOptions {
    std::size_t k = 1;      // number of excited levels beyond the ground state
    double alpha = 3.0;     // overlap penalty, hartree
    std::size_t restarts = 4;
    std::uint64_t seed = 7;
};

struct VqdResult {
    std::vector<double> energies; // plain <H> of each level
    std::vector<VqeResult> levels;
    std::vector<std::vector<double>> overlaps; // |<psi_i|psi_j>|^2
    bool ordering_warning = false;             // energies not ascending
};

/// Starting point for restart r of level `level`: zeros for r = 0, otherwise
/// uniform in [-pi, pi) from the counter-based generator.
[[nodiscard]] inline std::vector<double> vqd_initial_point(std::size_t n_params,
                                                           std::uint64_t seed, std::size_t level,
                                                           std::size_t restart) {
    std::vector<double> t(n_params, 0.0);
    if (restart == 0) {
        return t;
    }
    const CounterRng rng(seed ^ (0x51ED270B27A3F1C5ULL * (level + 1)) ^
                         (0x2545F4914F6CDD1DULL * restart));
    for (std::size_t i = 0; i < n_params; ++i) {
        t[i] = (2.0 * rng.uniform(i) - 1.0) * std::numbers::pi;
    }
    return t;
}

/**
 * Sequential deflation: level i minimises E + alpha * sum_{j<i} |<psi_j|psi>|^2
 * over several seeded starting points and keeps the lowest objective.
 */
[[nodiscard]] inline VqdResult vqd_excited(const PauliSum &h, const Circuit &ansatz,
                                           const Bitstring &ref, const VqeOptions &opt = {},
                                           const VqdOptions &vopt = {}) {
    if (vopt.alpha < 0.0 || !std::isfinite(vopt.alpha)) {
        throw DomainError("VQD alpha must be finite and non-negative");
    }
    if (vopt.restarts < 1) {
        throw DomainError("VQD needs at least one restart");
    }
    VqdResult out;
    DeflationSet deflation{{}, vopt.alpha};
    for (std::size_t level = 0; level <= vopt.k; ++level) {
        VqeResult best;
        bool have = false;
        for (std::size_t r = 0; r < vopt.restarts; ++r) {
            auto res = detail::minimize(h, ansatz, ref, opt,
                                        vqd_initial_point(ansatz.n_params(), vopt.seed, level, r),
                                        deflation);
            if (!have || res.objective < best.objective) {
                best = std::move(res);
                have = true;
            }
        }
        deflation.states.push_back(ansatz_state(ansatz, best.theta, ref, opt.backend));
        out.energies.push_back(best.energy);
        out.levels.push_back(std::move(best));
    }
    const std::size_t n = deflation.states.size();
    out.overlaps.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out.overlaps[i][j] = std::norm(overlap(deflation.states[i], deflation.states[j]));
        }
    }
    for (std::size_t i = 1; i < out.energies.size(); ++i) {
        if (out.energies[i] < out.energies[i - 1] - 1e-8) {
            out.ordering_warning = true;
        }
    }
    return out;
}

} // namespace vqesim
