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
 * @file backend.hpp
 * Uniform access to the two simulators for the drivers.
 */
#pragma once

#include <string>
#include <variant>

#include "mps.hpp"
#include "statevector.hpp"

namespace vqesim {

enum class BackendKind { SV, MPS };

[[nodiscard]] inline std::string backend_name(BackendKind k) {
    return k == BackendKind::SV ? "sv" : "mps";
}

[[nodiscard]] inline BackendKind parse_backend(const std::string &s) {
    if (s == "sv") {
        return BackendKind::SV;
    }
    if (s == "mps") {
        return BackendKind::MPS;
    }
    throw DomainError("unknown backend '" + s + "' (expected sv or mps)");
}

struct BackendConfig {
    BackendKind kind = BackendKind::SV;
    std::size_t max_bond = 64;
    double svd_threshold = kDefaultDropThreshold;
    std::size_t workers = 1; // expectation workers; 0 means resolve_workers()
};

using State = std::variant<StateVector, MpsState>;

[[nodiscard]] inline State prepare_state(const BackendConfig &cfg, const Bitstring &ref,
                                         const BoundCircuit &c) {
    if (cfg.kind == BackendKind::SV) {
        return sv::evolve(sv::init(ref), c);
    }
    return mps::evolve(mps::init(ref, cfg.max_bond, cfg.svd_threshold), c);
}

[[nodiscard]] inline complex_t term_expectation(const State &s, const PauliString &p) {
    return std::visit(
        [&](const auto &st) -> complex_t {
            using T = std::decay_t<decltype(st)>;
            if constexpr (std::is_same_v<T, StateVector>) {
                return sv::term_expectation(st, p);
            } else {
                return st.term_expectation(p);
            }
        },
        s);
}

/// <a|b> for two states of the same backend.
[[nodiscard]] inline complex_t overlap(const State &a, const State &b) {
    if (a.index() != b.index()) {
        throw DomainError("overlap between states of different backends");
    }
    if (const auto *x = std::get_if<StateVector>(&a)) {
        return x->inner(std::get<StateVector>(b));
    }
    return std::get<MpsState>(a).inner(std::get<MpsState>(b));
}

[[nodiscard]] inline StateVector to_state_vector(const State &s) {
    if (const auto *x = std::get_if<StateVector>(&s)) {
        return *x;
    }
    return std::get<MpsState>(s).to_state_vector();
}

} // namespace vqesim
