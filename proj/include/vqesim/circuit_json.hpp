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
 * @file circuit_json.hpp
 * JSON interchange for circuits:
 *
 *   {"n_qubits": 4, "n_params": 2,
 *    "gates": [{"kind": "rz", "qubits": [3],
 *               "params": [{"index": 0, "scale": -1.0, "offset": 0.0}]},
 *              {"kind": "h", "qubits": [0], "params": []}]}
 *
 * A constant angle is a bare number; a parametric one is an object.
 */
#pragma once

#include <string>

#include <json.hpp>

#include "circuit.hpp"

namespace vqesim {

[[nodiscard]] inline nlohmann::json to_json(const Circuit &c) {
    nlohmann::json gates = nlohmann::json::array();
    for (const auto &g : c.gates()) {
        nlohmann::json params = nlohmann::json::array();
        for (const auto &p : g.params) {
            if (const auto *k = std::get_if<ConstantParam>(&p)) {
                params.push_back(k->value);
            } else {
                const auto &a = std::get<AffineParam>(p);
                params.push_back({{"index", a.index}, {"scale", a.scale}, {"offset", a.offset}});
            }
        }
        gates.push_back(
            {{"kind", std::string(gate_name(g.kind))}, {"qubits", g.qubits}, {"params", params}});
    }
    return {{"n_qubits", c.n_qubits()}, {"n_params", c.n_params()}, {"gates", gates}};
}

[[nodiscard]] inline Circuit circuit_from_json(const nlohmann::json &j) {
    try {
        Circuit c(j.at("n_qubits").get<std::size_t>(), j.value("n_params", std::size_t{0}));
        for (const auto &g : j.at("gates")) {
            std::vector<ParamExpr> params;
            for (const auto &p : g.value("params", nlohmann::json::array())) {
                if (p.is_number()) {
                    params.push_back(constant(p.get<double>()));
                } else {
                    params.push_back(affine(p.at("index").get<std::size_t>(),
                                            p.value("scale", 1.0), p.value("offset", 0.0)));
                }
            }
            c.add(parse_gate_kind(g.at("kind").get<std::string>()),
                  g.at("qubits").get<std::vector<std::uint32_t>>(), std::move(params));
        }
        return c;
    } catch (const nlohmann::json::exception &e) {
        throw FormatError(std::string("circuit json: ") + e.what());
    } catch (const DomainError &e) {
        throw FormatError(std::string("circuit json: ") + e.what());
    }
}

} // namespace vqesim
