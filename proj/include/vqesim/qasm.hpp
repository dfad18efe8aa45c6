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
 * @file qasm.hpp
 * OpenQASM 2.0 export, plus a reader for the subset the exporter emits.
 *
 * Note that qelib1 defines rz(l) as u1(l) = diag(1, e^{il}), which differs
 * from RZ here by a global phase only.
 */
#pragma once

#include <cstdio>
#include <istream>
#include <numbers>
#include <regex>
#include <sstream>
#include <string>

#include "circuit.hpp"

namespace vqesim {

namespace detail {

inline std::string qasm_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace detail

[[nodiscard]] inline std::string to_qasm(const BoundCircuit &c) {
    std::ostringstream out;
    out << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[" << c.n_qubits << "];\n";
    const auto q = [](std::uint32_t i) { return "q[" + std::to_string(i) + "]"; };
    for (const auto &g : c.gates) {
        const auto v = g.params();
        switch (g.kind) {
        case GateKind::HY: {
            const auto h = detail::qasm_number(std::numbers::pi / 2);
            out << "u3(" << h << "," << h << "," << h << ") " << q(g.qubits[0]) << ";\n";
            break;
        }
        case GateKind::H:
        case GateKind::X:
            out << gate_name(g.kind) << " " << q(g.qubits[0]) << ";\n";
            break;
        case GateKind::RZ:
        case GateKind::RY:
            out << gate_name(g.kind) << "(" << detail::qasm_number(v[0]) << ") " << q(g.qubits[0])
                << ";\n";
            break;
        case GateKind::U3:
            out << "u3(" << detail::qasm_number(v[0]) << "," << detail::qasm_number(v[1]) << ","
                << detail::qasm_number(v[2]) << ") " << q(g.qubits[0]) << ";\n";
            break;
        case GateKind::CNOT:
        case GateKind::SWAP:
            out << gate_name(g.kind) << " " << q(g.qubits[0]) << "," << q(g.qubits[1]) << ";\n";
            break;
        case GateKind::CU3:
            out << "cu3(" << detail::qasm_number(v[0]) << "," << detail::qasm_number(v[1]) << ","
                << detail::qasm_number(v[2]) << ") " << q(g.qubits[0]) << "," << q(g.qubits[1])
                << ";\n";
            break;
        }
    }
    return out.str();
}

/// Exports a circuit whose angles are all constants.
[[nodiscard]] inline std::string to_qasm(const Circuit &c) { return to_qasm(bind_constants(c)); }

/**
 * Reads programs in the exporter's dialect: one register, numeric angles,
 * gates h, x, rz, ry, u3, cx, cu3, swap. Returns a constant-angle circuit.
 */
[[nodiscard]] inline Circuit parse_qasm(const std::string &text) {
    std::istringstream in(text);
    std::string stmt;
    std::size_t n_qubits = 0;
    bool have_reg = false;
    Circuit c;
    static const std::regex gate_re(R"(^([a-z0-9]+)\s*(?:\(([^)]*)\))?\s+(.+)$)");
    static const std::regex reg_re(R"(^qreg\s+q\s*\[\s*(\d+)\s*\]$)");
    static const std::regex qubit_re(R"(^\s*q\s*\[\s*(\d+)\s*\]\s*$)");
    std::size_t index = 0;
    while (std::getline(in, stmt, ';')) {
        ++index;
        // Drop line comments and surrounding whitespace.
        std::string clean;
        std::istringstream lines(stmt);
        for (std::string line; std::getline(lines, line);) {
            clean += line.substr(0, line.find("//")) + " ";
        }
        const auto b = clean.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) {
            continue;
        }
        clean = clean.substr(b, clean.find_last_not_of(" \t\r\n") - b + 1);
        const std::string where = "qasm statement " + std::to_string(index) + ": ";
        std::smatch m;
        if (clean.rfind("OPENQASM", 0) == 0 || clean.rfind("include", 0) == 0) {
            continue;
        }
        if (std::regex_match(clean, m, reg_re)) {
            if (have_reg) {
                throw FormatError(where + "only one register is supported");
            }
            n_qubits = std::stoul(m[1]);
            c = Circuit(n_qubits);
            have_reg = true;
            continue;
        }
        if (!have_reg) {
            throw FormatError(where + "gate before register declaration");
        }
        if (!std::regex_match(clean, m, gate_re)) {
            throw FormatError(where + "cannot parse '" + clean + "'");
        }
        const GateKind kind = [&] {
            try {
                return parse_gate_kind(m[1].str());
            } catch (const FormatError &e) {
                throw FormatError(where + e.what());
            }
        }();
        std::vector<ParamExpr> params;
        if (m[2].matched) {
            std::istringstream ps(m[2].str());
            for (std::string tok; std::getline(ps, tok, ',');) {
                std::size_t used = 0;
                double v = 0.0;
                try {
                    v = std::stod(tok, &used);
                } catch (const std::exception &) {
                    throw FormatError(where + "bad angle '" + tok + "'");
                }
                if (tok.find_first_not_of(" \t", used) != std::string::npos) {
                    throw FormatError(where + "bad angle '" + tok + "'");
                }
                params.push_back(constant(v));
            }
        }
        std::vector<std::uint32_t> qubits;
        std::istringstream qs(m[3].str());
        for (std::string tok; std::getline(qs, tok, ',');) {
            std::smatch qm;
            if (!std::regex_match(tok, qm, qubit_re)) {
                throw FormatError(where + "bad qubit operand '" + tok + "'");
            }
            qubits.push_back(static_cast<std::uint32_t>(std::stoul(qm[1])));
        }
        try {
            c.add(kind, std::move(qubits), std::move(params));
        } catch (const DomainError &e) {
            throw FormatError(where + e.what());
        }
    }
    if (!have_reg) {
        throw FormatError("qasm program declares no register");
    }
    return c;
}

} // namespace vqesim
