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
 * @file circuit.hpp
 * Backend-independent parametric circuits.
 *
 * Gate angles are ParamExpr values: either a constant or an affine function
 * scale * theta[index] + offset of one circuit parameter. Several gates may
 * reference the same parameter; that is how one excitation amplitude drives
 * all Pauli strings of its generator.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "gates.hpp"
#include "pauli.hpp"

namespace vqesim {

struct ConstantParam {
    double value = 0.0;
    friend bool operator==(const ConstantParam &, const ConstantParam &) = default;
};

struct AffineParam {
    std::size_t index = 0;
    double scale = 1.0;
    double offset = 0.0;
    friend bool operator==(const AffineParam &, const AffineParam &) = default;
};

using ParamExpr = std::variant<ConstantParam, AffineParam>;

[[nodiscard]] inline ParamExpr constant(double v) { return ConstantParam{v}; }

[[nodiscard]] inline ParamExpr affine(std::size_t index, double scale = 1.0,
                                      double offset = 0.0) {
    if (!std::isfinite(scale) || scale == 0.0) {
        throw DomainError("affine parameter scale must be finite and non-zero");
    }
    return AffineParam{index, scale, offset};
}

/// Multiplies the expression by a constant factor (used for RZ(-2 angle)).
[[nodiscard]] inline ParamExpr scaled(const ParamExpr &e, double factor) {
    if (const auto *c = std::get_if<ConstantParam>(&e)) {
        return ConstantParam{c->value * factor};
    }
    const auto &a = std::get<AffineParam>(e);
    return affine(a.index, a.scale * factor, a.offset * factor);
}

[[nodiscard]] inline double evaluate(const ParamExpr &e, std::span<const double> theta) {
    if (const auto *c = std::get_if<ConstantParam>(&e)) {
        return c->value;
    }
    const auto &a = std::get<AffineParam>(e);
    return a.scale * theta[a.index] + a.offset;
}

struct Gate {
    GateKind kind{};
    std::vector<std::uint32_t> qubits;
    std::vector<ParamExpr> params;

    friend bool operator==(const Gate &, const Gate &) = default;
};

/// Gate with every angle evaluated.
struct BoundGate {
    GateKind kind{};
    std::array<std::uint32_t, 2> qubits{};
    std::array<double, 3> values{};

    [[nodiscard]] std::span<const double> params() const {
        return {values.data(), gate_param_count(kind)};
    }
};

struct BoundCircuit {
    std::size_t n_qubits = 0;
    std::vector<BoundGate> gates;
};

class Circuit {
  public:
    Circuit() = default;
    explicit Circuit(std::size_t n_qubits, std::size_t n_params = 0)
        : n_qubits_(n_qubits), n_params_(n_params) {}

    [[nodiscard]] std::size_t n_qubits() const { return n_qubits_; }
    [[nodiscard]] std::size_t n_params() const { return n_params_; }
    [[nodiscard]] const std::vector<Gate> &gates() const { return gates_; }
    [[nodiscard]] std::size_t size() const { return gates_.size(); }
    [[nodiscard]] bool empty() const { return gates_.empty(); }

    /// Grows the parameter vector length (never shrinks).
    void reserve_params(std::size_t n) { n_params_ = std::max(n_params_, n); }

    /// Validates arity, qubit range/distinctness and parameter references.
    void add(Gate g) {
        const auto name = std::string(gate_name(g.kind));
        if (g.qubits.size() != gate_arity(g.kind)) {
            throw DomainError("gate " + name + " expects " + std::to_string(gate_arity(g.kind)) +
                              " qubits");
        }
        if (g.params.size() != gate_param_count(g.kind)) {
            throw DomainError("gate " + name + " expects " +
                              std::to_string(gate_param_count(g.kind)) + " parameters");
        }
        for (auto q : g.qubits) {
            if (q >= n_qubits_) {
                throw DomainError("gate " + name + " acts on qubit " + std::to_string(q) +
                                  " of a " + std::to_string(n_qubits_) + "-qubit circuit");
            }
        }
        if (g.qubits.size() == 2 && g.qubits[0] == g.qubits[1]) {
            throw DomainError("gate " + name + " repeats a qubit");
        }
        for (const auto &p : g.params) {
            if (const auto *a = std::get_if<AffineParam>(&p)) {
                if (!std::isfinite(a->scale) || a->scale == 0.0) {
                    throw DomainError("affine parameter scale must be finite and non-zero");
                }
                n_params_ = std::max(n_params_, a->index + 1);
            }
        }
        gates_.push_back(std::move(g));
    }

    void add(GateKind k, std::vector<std::uint32_t> qubits, std::vector<ParamExpr> params = {}) {
        add(Gate{k, std::move(qubits), std::move(params)});
    }

    /// Appends another circuit on the same register and parameter namespace.
    void append(const Circuit &other) {
        if (other.n_qubits_ > n_qubits_) {
            throw DomainError("appended circuit has more qubits than the target");
        }
        for (const auto &g : other.gates_) {
            add(g);
        }
        reserve_params(other.n_params_);
    }

    [[nodiscard]] bool is_bound() const {
        return std::all_of(gates_.begin(), gates_.end(), [](const Gate &g) {
            return std::all_of(g.params.begin(), g.params.end(), [](const ParamExpr &p) {
                return std::holds_alternative<ConstantParam>(p);
            });
        });
    }

  private:
    std::size_t n_qubits_ = 0;
    std::size_t n_params_ = 0;
    std::vector<Gate> gates_;
};

[[nodiscard]] inline BoundCircuit bind_circuit(const Circuit &c, std::span<const double> theta) {
    if (theta.size() != c.n_params()) {
        throw DomainError("bind: expected " + std::to_string(c.n_params()) +
                          " parameters, got " + std::to_string(theta.size()));
    }
    for (double t : theta) {
        if (!std::isfinite(t)) {
            throw DomainError("bind: parameter vector contains a non-finite value");
        }
    }
    BoundCircuit out{c.n_qubits(), {}};
    out.gates.reserve(c.size());
    for (const auto &g : c.gates()) {
        BoundGate b{g.kind, {}, {}};
        std::copy(g.qubits.begin(), g.qubits.end(), b.qubits.begin());
        for (std::size_t k = 0; k < g.params.size(); ++k) {
            b.values[k] = evaluate(g.params[k], theta);
        }
        out.gates.push_back(b);
    }
    return out;
}

/// Binds a circuit that has only constant angles.
[[nodiscard]] inline BoundCircuit bind_constants(const Circuit &c) {
    if (!c.is_bound()) {
        throw StateError("circuit has unbound parameters");
    }
    std::vector<double> zeros(c.n_params(), 0.0);
    return bind_circuit(c, zeros);
}

struct ResourceCount {
    std::size_t n_qubits = 0;
    std::size_t n_params = 0;
    std::size_t n_cnot = 0;
    std::size_t n_gates = 0;
    std::size_t depth = 0;

    friend bool operator==(const ResourceCount &, const ResourceCount &) = default;
};

/// Exact gate counts; depth by greedy per-qubit layering. n_cnot counts CNOT
/// gates only (SWAP and CU3 are counted in n_gates).
[[nodiscard]] inline ResourceCount count_resources(const Circuit &c) {
    ResourceCount r{c.n_qubits(), c.n_params(), 0, c.size(), 0};
    std::vector<std::size_t> level(c.n_qubits(), 0);
    for (const auto &g : c.gates()) {
        std::size_t l = 0;
        for (auto q : g.qubits) {
            l = std::max(l, level[q]);
        }
        for (auto q : g.qubits) {
            level[q] = l + 1;
        }
        r.depth = std::max(r.depth, l + 1);
        r.n_cnot += g.kind == GateKind::CNOT ? 1 : 0;
    }
    return r;
}

/**
 * Circuit for exp(i * angle * P): basis change (H for X, HY for Y), a CNOT
 * ladder over the string's support accumulating parity on its last qubit,
 * RZ(-2 angle), then the mirrored ladder and basis change.
 */
[[nodiscard]] inline Circuit pauli_evolution(const PauliString &p, const ParamExpr &angle,
                                             std::size_t n_qubits) {
    if (p.is_identity()) {
        throw DomainError("pauli_evolution: the identity string generates no rotation");
    }
    if (p.min_qubits() > n_qubits) {
        throw DomainError("pauli_evolution: string acts outside the register");
    }
    Circuit c(n_qubits);
    if (const auto *a = std::get_if<AffineParam>(&angle)) {
        c.reserve_params(a->index + 1);
    }
    auto basis_change = [&] {
        for (const auto &[q, axis] : p.entries()) {
            if (axis == PauliAxis::X) {
                c.add(GateKind::H, {q});
            } else if (axis == PauliAxis::Y) {
                c.add(GateKind::HY, {q});
            }
        }
    };
    const auto support = p.entries();
    basis_change();
    for (std::size_t k = 0; k + 1 < support.size(); ++k) {
        c.add(GateKind::CNOT, {support[k].first, support[k + 1].first});
    }
    c.add(GateKind::RZ, {support.back().first}, {scaled(angle, -2.0)});
    for (std::size_t k = support.size() - 1; k-- > 0;) {
        c.add(GateKind::CNOT, {support[k].first, support[k + 1].first});
    }
    basis_change();
    return c;
}

} // namespace vqesim
