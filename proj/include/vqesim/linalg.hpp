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
#pragma once

#include <algorithm>
#include <vector>

#include <Eigen/Eigenvalues>

#include "pauli.hpp"

namespace vqesim {

/// Full ascending spectrum of a Hermitian Pauli sum by dense diagonalisation.
[[nodiscard]] inline std::vector<double> dense_spectrum(const PauliSum &h, std::size_t n_qubits) {
    if (!is_hermitian(h)) {
        throw DomainError("dense_spectrum requires a Hermitian operator");
    }
    const Eigen::MatrixXcd m = to_dense_matrix(h, n_qubits);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw NumericalError("dense eigensolver did not converge");
    }
    const auto &ev = es.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

/// Lowest k eigenvalues (with multiplicity).
[[nodiscard]] inline std::vector<double> lowest_eigenvalues(const PauliSum &h,
                                                            std::size_t n_qubits, std::size_t k) {
    auto ev = dense_spectrum(h, n_qubits);
    ev.resize(std::min(k, ev.size()));
    return ev;
}

/// Distinct eigenvalues, merging values closer than tol.
[[nodiscard]] inline std::vector<double> distinct_levels(const std::vector<double> &ev,
                                                         double tol = 1e-8) {
    std::vector<double> out;
    for (double v : ev) {
        if (out.empty() || v - out.back() > tol) {
            out.push_back(v);
        }
    }
    return out;
}

} // namespace vqesim
