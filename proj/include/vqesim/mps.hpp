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
 * @file mps.hpp
 * Matrix-product-state simulation in Vidal form.
 *
 * Site k stores B_k = Gamma_k diag(lambda_k), one chi_{k-1} x chi_k matrix per
 * physical index, and bond k (between sites k and k+1) stores the Schmidt
 * weights lambda_k. With this choice every B_k is right-canonical and
 * Gamma_k is recovered by dividing out lambda_k.
 *
 * A two-site gate forms Phi = G (B_k B_{k+1}) and Theta = diag(lambda_{k-1}) Phi,
 * takes the SVD Theta = U S V^dagger and sets
 *
 *   B_{k+1} = V^dagger,   lambda_k = S / |S|,   B_k = Phi V / |S|.
 *
 * B_k = Phi V equals diag(lambda_{k-1})^{-1} U S without dividing by any
 * weight, so numerically vanishing Schmidt values never get amplified.
 *
 * Truncation changes the state outside the updated bond, so after any update
 * that discards weight (or leaves B_k measurably off the right isometry) a
 * QR/SVD sweep rebuilds the exact canonical form of the whole chain.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "bitstring.hpp"
#include "circuit.hpp"
#include "pauli.hpp"
#include "statevector.hpp"

namespace vqesim {

inline constexpr std::size_t kMpsDenseExportCap = 16;
inline constexpr double kLambdaFloor = 1e-14;
/// Discarded relative weight, or local isometry error, above which an update
/// triggers a full re-canonicalisation sweep.
inline constexpr double kCanonicalDriftWeight = 1e-24;
inline constexpr double kCanonicalDriftTol = 1e-11;

struct MpsConfig {
    std::size_t max_bond = 64;
    double svd_threshold = kDefaultDropThreshold;
};

class MpsState {
  public:
    using Matrix = Eigen::MatrixXcd;
    using Site = std::array<Matrix, 2>;

    MpsState() = default;

    /// Product state for the given bitstring.
    MpsState(const Bitstring &b, MpsConfig cfg) : n_(b.size()), cfg_(cfg) {
        if (cfg.max_bond < 1) {
            throw DomainError("max_bond must be at least 1");
        }
        if (!(cfg.svd_threshold >= 0.0) || !std::isfinite(cfg.svd_threshold)) {
            throw DomainError("svd_threshold must be finite and non-negative");
        }
        if (n_ == 0) {
            throw DomainError("MPS needs at least one qubit");
        }
        sites_.resize(n_);
        for (std::size_t k = 0; k < n_; ++k) {
            sites_[k][0] = Matrix::Zero(1, 1);
            sites_[k][1] = Matrix::Zero(1, 1);
            sites_[k][b[k]](0, 0) = 1.0;
        }
        lambdas_.assign(n_ - 1, Eigen::VectorXd::Ones(1));
    }

    [[nodiscard]] std::size_t n_qubits() const { return n_; }
    [[nodiscard]] const MpsConfig &config() const { return cfg_; }
    [[nodiscard]] const Site &site(std::size_t k) const { return sites_.at(k); }

    /// Schmidt weights on bond k (between sites k and k+1).
    [[nodiscard]] const Eigen::VectorXd &lambda(std::size_t k) const { return lambdas_.at(k); }

    [[nodiscard]] std::vector<std::size_t> bond_dimensions() const {
        std::vector<std::size_t> d;
        d.reserve(lambdas_.size());
        for (const auto &l : lambdas_) {
            d.push_back(static_cast<std::size_t>(l.size()));
        }
        return d;
    }

    [[nodiscard]] std::size_t max_bond_dimension() const {
        std::size_t m = 1;
        for (const auto &l : lambdas_) {
            m = std::max(m, static_cast<std::size_t>(l.size()));
        }
        return m;
    }

    /// Discarded squared weight (relative to the pre-truncation total) per
    /// two-qubit application, including routing SWAPs.
    [[nodiscard]] const std::vector<double> &truncation_log() const { return log_; }

    [[nodiscard]] double discarded_weight() const {
        return std::accumulate(log_.begin(), log_.end(), 0.0);
    }

    /// Gamma_k^i = B_k^i diag(lambda_k)^{-1}, entries of lambda floored at 1e-14.
    [[nodiscard]] Site gamma(std::size_t k) const {
        Site g = sites_.at(k);
        if (k + 1 < n_) {
            const Eigen::VectorXd inv = lambdas_[k].cwiseMax(kLambdaFloor).cwiseInverse();
            for (auto &m : g) {
                m = m * inv.asDiagonal();
            }
        }
        return g;
    }

    void apply_1q(const Mat2 &u, std::uint32_t q) {
        check_qubit(q);
        auto &s = sites_[q];
        const Matrix b0 = s[0];
        const Matrix b1 = s[1];
        s[0] = u[0] * b0 + u[1] * b1;
        s[1] = u[2] * b0 + u[3] * b1;
    }

    /// Two-qubit gate; qa is the high bit of the matrix basis. Non-adjacent
    /// pairs are routed by swapping the lower qubit up next to the higher one
    /// and back again afterwards.
    void apply_2q(const Mat4 &m, std::uint32_t qa, std::uint32_t qb) {
        check_qubit(qa);
        check_qubit(qb);
        if (qa == qb) {
            throw DomainError("two-qubit gate on a repeated qubit");
        }
        const std::uint32_t lo = std::min(qa, qb);
        const std::uint32_t hi = std::max(qa, qb);
        const Mat4 swap = matrix_2q(GateKind::SWAP, {});
        for (std::uint32_t k = lo; k + 1 < hi; ++k) {
            apply_adjacent(swap, k);
        }
        // After routing the lower qubit sits on site hi - 1.
        apply_adjacent(qa < qb ? m : swap_qubit_order(m), hi - 1);
        for (std::uint32_t k = hi - 1; k-- > lo;) {
            apply_adjacent(swap, k);
        }
    }

    void apply(const BoundGate &g) {
        if (gate_arity(g.kind) == 1) {
            apply_1q(matrix_1q(g.kind, g.params()), g.qubits[0]);
        } else {
            apply_2q(matrix_2q(g.kind, g.params()), g.qubits[0], g.qubits[1]);
        }
    }

    /// Amplitude <b|psi> as a chain of matrix products.
    [[nodiscard]] complex_t amplitude(const Bitstring &b) const {
        if (b.size() != n_) {
            throw DomainError("bitstring length does not match the MPS register");
        }
        Eigen::RowVectorXcd v = sites_[0][b[0]].row(0);
        for (std::size_t k = 1; k < n_; ++k) {
            v = v * sites_[k][b[k]];
        }
        return v(0);
    }

    /// Full contraction into a dense vector (qubit 0 = least-significant bit).
    [[nodiscard]] StateVector to_state_vector() const {
        if (n_ > kMpsDenseExportCap) {
            throw ResourceLimitError("to_state_vector limited to " +
                                     std::to_string(kMpsDenseExportCap) + " qubits");
        }
        Matrix acc = Matrix::Ones(1, 1);
        for (std::size_t k = 0; k < n_; ++k) {
            const auto rows = acc.rows();
            Matrix next(2 * rows, sites_[k][0].cols());
            next.topRows(rows) = acc * sites_[k][0];
            next.bottomRows(rows) = acc * sites_[k][1];
            acc = std::move(next);
        }
        std::vector<complex_t> amps(acc.rows());
        for (Eigen::Index i = 0; i < acc.rows(); ++i) {
            amps[static_cast<std::size_t>(i)] = acc(i, 0);
        }
        return StateVector::from_amplitudes(n_, std::move(amps));
    }

    /// <this|other>.
    [[nodiscard]] complex_t inner(const MpsState &other) const {
        if (other.n_ != n_) {
            throw DomainError("inner product of MPS with different qubit counts");
        }
        Matrix env = Matrix::Ones(1, 1);
        for (std::size_t k = 0; k < n_; ++k) {
            env = sites_[k][0].adjoint() * env * other.sites_[k][0] +
                  sites_[k][1].adjoint() * env * other.sites_[k][1];
        }
        return env(0, 0);
    }

    [[nodiscard]] double norm() const { return std::sqrt(std::abs(inner(*this).real())); }

    /// <psi|P|psi> by a left-to-right transfer contraction over the chain.
    [[nodiscard]] complex_t term_expectation(const PauliString &p) const {
        if (p.min_qubits() > n_) {
            throw DomainError("Pauli string acts outside the register");
        }
        const auto entries = p.entries();
        std::size_t e = 0;
        Matrix env = Matrix::Ones(1, 1);
        for (std::size_t k = 0; k < n_; ++k) {
            PauliAxis axis = PauliAxis::I;
            if (e < entries.size() && entries[e].first == k) {
                axis = entries[e++].second;
            }
            env = transfer(env, sites_[k], axis);
        }
        return env(0, 0);
    }

    /// Validates the canonical-form invariants within `tol`: right
    /// isometries sum_i B^i B^i+ = 1, the left condition
    /// sum_i B^i+ diag(lambda_{k-1}^2) B^i = diag(lambda_k^2), sorted positive
    /// unit-norm weights and bond dimensions within the cap.
    [[nodiscard]] bool is_canonical(double tol = 1e-8) const {
        for (std::size_t k = 0; k < n_; ++k) {
            const auto &s = sites_[k];
            const Matrix right = s[0] * s[0].adjoint() + s[1] * s[1].adjoint();
            if ((right - Matrix::Identity(right.rows(), right.cols())).cwiseAbs().maxCoeff() > tol) {
                return false;
            }
            const Eigen::VectorXd left_w =
                k == 0 ? Eigen::VectorXd::Ones(1) : Eigen::VectorXd(lambdas_[k - 1].array().square());
            const Eigen::VectorXd right_w =
                k + 1 == n_ ? Eigen::VectorXd::Ones(1) : Eigen::VectorXd(lambdas_[k].array().square());
            const Matrix lhs = s[0].adjoint() * left_w.asDiagonal() * s[0] +
                               s[1].adjoint() * left_w.asDiagonal() * s[1];
            const Matrix rhs = right_w.cast<complex_t>().asDiagonal();
            if ((lhs - rhs).cwiseAbs().maxCoeff() > tol) {
                return false;
            }
        }
        for (const auto &l : lambdas_) {
            if (static_cast<std::size_t>(l.size()) > cfg_.max_bond || (l.array() <= 0.0).any()) {
                return false;
            }
            if (std::abs(l.norm() - 1.0) > tol) {
                return false;
            }
            for (Eigen::Index i = 1; i < l.size(); ++i) {
                if (l(i) > l(i - 1)) {
                    return false;
                }
            }
        }
        return true;
    }

  private:
    void check_qubit(std::uint32_t q) const {
        if (q >= n_) {
            throw DomainError("qubit " + std::to_string(q) + " outside " + std::to_string(n_) +
                              "-qubit register");
        }
    }

    static Matrix transfer(const Matrix &env, const Site &b, PauliAxis axis) {
        const Matrix e0 = env * b[0];
        const Matrix e1 = env * b[1];
        switch (axis) {
        case PauliAxis::I:
            return b[0].adjoint() * e0 + b[1].adjoint() * e1;
        case PauliAxis::Z:
            return b[0].adjoint() * e0 - b[1].adjoint() * e1;
        case PauliAxis::X:
            return b[0].adjoint() * e1 + b[1].adjoint() * e0;
        case PauliAxis::Y:
            return complex_t{0, -1} * (b[0].adjoint() * e1) + complex_t{0, 1} * (b[1].adjoint() * e0);
        }
        return env;
    }

    /// Gate on sites (k, k+1) with site k as the high bit of m.
    void apply_adjacent(const Mat4 &m, std::size_t k) {
        const auto &a = sites_[k];
        const auto &b = sites_[k + 1];
        const Eigen::Index dl = a[0].rows();
        const Eigen::Index dr = b[0].cols();

        std::array<Matrix, 4> ab;
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = 0; j < 2; ++j) {
                ab[2 * i + j] = a[i] * b[j];
            }
        }
        // Phi as a (2 dl) x (2 dr) matrix: row i*dl + alpha, column j*dr + beta.
        Matrix phi = Matrix::Zero(2 * dl, 2 * dr);
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = 0; j < 2; ++j) {
                auto block = phi.block(static_cast<Eigen::Index>(i) * dl,
                                       static_cast<Eigen::Index>(j) * dr, dl, dr);
                for (std::size_t c = 0; c < 4; ++c) {
                    const complex_t g = m[(2 * i + j) * 4 + c];
                    if (g != complex_t{}) {
                        block += g * ab[c];
                    }
                }
            }
        }
        Matrix theta = phi;
        if (k > 0) {
            const auto &lw = lambdas_[k - 1];
            for (Eigen::Index i = 0; i < 2; ++i) {
                theta.middleRows(i * dl, dl) = lw.cast<complex_t>().asDiagonal() *
                                               phi.middleRows(i * dl, dl);
            }
        }

        Eigen::BDCSVD<Matrix> svd(theta, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const Eigen::VectorXd &sv = svd.singularValues();
        const double total = sv.squaredNorm();
        if (!(total > 0.0) || !std::isfinite(total)) {
            throw NumericalError("two-qubit update produced a vanishing or non-finite state");
        }
        const double cutoff = cfg_.svd_threshold * sv(0);
        Eigen::Index keep = 0;
        while (keep < sv.size() && static_cast<std::size_t>(keep) < cfg_.max_bond &&
               sv(keep) > 0.0 && sv(keep) >= cutoff) {
            ++keep;
        }
        keep = std::max<Eigen::Index>(keep, 1);
        const double kept = sv.head(keep).squaredNorm();
        log_.push_back(std::max(0.0, (total - kept) / total));
        const double scale = 1.0 / std::sqrt(kept);

        const Matrix v = svd.matrixV().leftCols(keep);
        const Matrix bk = phi * v * scale; // (2 dl) x keep
        sites_[k][0] = bk.topRows(dl);
        sites_[k][1] = bk.bottomRows(dl);
        const Matrix vh = v.adjoint(); // keep x (2 dr)
        sites_[k + 1][0] = vh.leftCols(dr);
        sites_[k + 1][1] = vh.rightCols(dr);
        lambdas_[k] = sv.head(keep) * scale;

        // Truncation, or noise-level lambdas that leave B_k off the right
        // isometry, break canonical form beyond this bond; restore it exactly.
        if (log_.back() > kCanonicalDriftWeight || right_isometry_error(k) > kCanonicalDriftTol) {
            restore_canonical();
        }
    }

    [[nodiscard]] double right_isometry_error(std::size_t k) const {
        const auto &s = sites_[k];
        const Matrix r = s[0] * s[0].adjoint() + s[1] * s[1].adjoint();
        return (r - Matrix::Identity(r.rows(), r.cols())).cwiseAbs().maxCoeff();
    }

    /// QR sweep left to right, then SVD sweep right to left: every B_k
    /// becomes an exact right isometry and every lambda the exact Schmidt
    /// spectrum of the current (normalised) state. Bond dimensions never grow.
    void restore_canonical() {
        for (std::size_t k = 0; k + 1 < n_; ++k) {
            auto &s = sites_[k];
            const Eigen::Index dl = s[0].rows();
            const Eigen::Index dr = s[0].cols();
            Matrix m(2 * dl, dr);
            m << s[0], s[1];
            Eigen::HouseholderQR<Matrix> qr(m);
            const Eigen::Index r = std::min(2 * dl, dr);
            const Matrix q = qr.householderQ() * Matrix::Identity(2 * dl, r);
            const Matrix rr = qr.matrixQR().topRows(r).template triangularView<Eigen::Upper>();
            s[0] = q.topRows(dl);
            s[1] = q.bottomRows(dl);
            for (auto &next : sites_[k + 1]) {
                next = rr * next;
            }
        }
        for (std::size_t k = n_; k-- > 1;) {
            auto &s = sites_[k];
            const Eigen::Index dl = s[0].rows();
            const Eigen::Index dr = s[0].cols();
            Matrix m(dl, 2 * dr);
            m << s[0], s[1];
            Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
            const Eigen::VectorXd &sv = svd.singularValues();
            Eigen::Index keep = 0;
            while (keep < sv.size() && sv(keep) > 0.0) {
                ++keep;
            }
            keep = std::max<Eigen::Index>(keep, 1);
            const double norm = sv.head(keep).norm();
            if (!(norm > 0.0) || !std::isfinite(norm)) {
                throw NumericalError("canonicalisation met a vanishing or non-finite state");
            }
            const Matrix vh = svd.matrixV().leftCols(keep).adjoint();
            s[0] = vh.leftCols(dr);
            s[1] = vh.rightCols(dr);
            lambdas_[k - 1] = sv.head(keep) / norm;
            const Matrix us = svd.matrixU().leftCols(keep) * sv.head(keep).asDiagonal() / norm;
            for (auto &prev : sites_[k - 1]) {
                prev = prev * us;
            }
        }
        auto &first = sites_[0];
        const double norm = std::sqrt(first[0].squaredNorm() + first[1].squaredNorm());
        first[0] /= norm;
        first[1] /= norm;
    }

    std::size_t n_ = 0;
    MpsConfig cfg_;
    std::vector<Site> sites_;
    std::vector<Eigen::VectorXd> lambdas_;
    std::vector<double> log_;
};

namespace mps {

[[nodiscard]] inline MpsState init(const Bitstring &b, std::size_t max_bond,
                                   double svd_threshold = kDefaultDropThreshold) {
    return MpsState(b, MpsConfig{max_bond, svd_threshold});
}

[[nodiscard]] inline MpsState evolve(MpsState s, const BoundCircuit &c) {
    if (c.n_qubits != s.n_qubits()) {
        throw DomainError("circuit register (" + std::to_string(c.n_qubits) +
                          ") does not match state (" + std::to_string(s.n_qubits()) + ")");
    }
    for (const auto &g : c.gates) {
        s.apply(g);
    }
    return s;
}

[[nodiscard]] inline complex_t term_expectation(const MpsState &s, const PauliString &p) {
    return s.term_expectation(p);
}

[[nodiscard]] inline double expectation(const MpsState &s, const PauliSum &h) {
    if (!is_hermitian(h)) {
        throw DomainError("expectation requires a Hermitian observable");
    }
    complex_t acc{};
    for (const auto &t : h.terms()) {
        acc += t.coefficient * s.term_expectation(t.string);
    }
    if (std::abs(acc.imag()) > 1e-10) {
        throw NumericalError("expectation of a Hermitian observable has imaginary part " +
                             std::to_string(acc.imag()));
    }
    return acc.real();
}

[[nodiscard]] inline complex_t amplitude(const MpsState &s, const Bitstring &b) {
    return s.amplitude(b);
}

[[nodiscard]] inline StateVector to_state_vector(const MpsState &s) { return s.to_state_vector(); }

} // namespace mps

} // namespace vqesim
