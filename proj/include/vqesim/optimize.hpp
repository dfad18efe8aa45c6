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
 * @file optimize.hpp
 * Local minimisers: limited-memory BFGS with backtracking and Nelder-Mead.
 *
 * Both stop when the objective changes by less than tol_energy on three
 * consecutive iterations, or after max_iter iterations. L-BFGS additionally
 * stops when the gradient infinity norm drops below tol_grad.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"

namespace vqesim {

struct OptimizerOptions {
    double tol_energy = 1e-8;
    double tol_grad = 1e-6;
    std::size_t max_iter = 500;
    std::size_t memory = 10;          // L-BFGS curvature pairs
    double simplex_step = 0.1;        // Nelder-Mead initial edge length
};

struct HistoryEntry {
    std::size_t iteration = 0;
    double energy = 0.0;
    std::optional<double> grad_norm; // infinity norm; absent for gradient-free steps
};

struct OptimizeResult {
    std::vector<double> x;
    double f = 0.0;
    std::size_t iterations = 0;
    std::vector<HistoryEntry> history;
    bool converged = false;
    std::string reason;
};

using ObjectiveFn = std::function<double(std::span<const double>)>;
/// Returns f(x) and writes the gradient into g (already sized).
using ObjectiveGradFn = std::function<double(std::span<const double>, std::vector<double> &)>;

namespace detail {

inline double inf_norm(const std::vector<double> &v) {
    double m = 0.0;
    for (double x : v) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

inline double dot(const std::vector<double> &a, const std::vector<double> &b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

inline void check_finite(double f, const char *where) {
    if (!std::isfinite(f)) {
        throw NumericalError(std::string(where) + ": objective became non-finite");
    }
}

/// Counts consecutive small changes of the objective.
struct StallCounter {
    double tol;
    std::size_t hits = 0;
    bool update(double previous, double current) {
        hits = std::abs(current - previous) < tol ? hits + 1 : 0;
        return hits >= 3;
    }
};

} // namespace detail

/**
 * L-BFGS with an Armijo backtracking line search. Only steps that decrease
 * the objective are accepted, so the recorded energies never increase.
 */
[[nodiscard]] inline OptimizeResult lbfgs_minimize(const ObjectiveGradFn &fg,
                                                   std::vector<double> x,
                                                   const OptimizerOptions &opt) {
    const std::size_t n = x.size();
    OptimizeResult r;
    std::vector<double> g(n, 0.0);
    double f = fg(x, g);
    detail::check_finite(f, "lbfgs");
    r.history.push_back({0, f, detail::inf_norm(g)});

    auto finish = [&](bool converged, std::string reason) {
        r.x = x;
        r.f = f;
        r.converged = converged;
        r.reason = std::move(reason);
        return r;
    };
    if (n == 0) {
        return finish(true, "no parameters");
    }
    if (detail::inf_norm(g) < opt.tol_grad) {
        return finish(true, "gradient");
    }

    std::deque<std::pair<std::vector<double>, std::vector<double>>> pairs; // (s, y)
    detail::StallCounter stall{opt.tol_energy};
    std::vector<double> xn(n), gn(n), d(n);
    for (std::size_t it = 1; it <= opt.max_iter; ++it) {
        r.iterations = it;
        // Two-loop recursion for d = -H g.
        d = g;
        std::vector<double> alpha(pairs.size());
        for (std::size_t k = pairs.size(); k-- > 0;) {
            const auto &[s, y] = pairs[k];
            alpha[k] = detail::dot(s, d) / detail::dot(y, s);
            for (std::size_t i = 0; i < n; ++i) {
                d[i] -= alpha[k] * y[i];
            }
        }
        if (!pairs.empty()) {
            const auto &[s, y] = pairs.back();
            const double gamma = detail::dot(s, y) / detail::dot(y, y);
            for (auto &v : d) {
                v *= gamma;
            }
        } else {
            const double scale = 1.0 / std::max(1.0, detail::inf_norm(g));
            for (auto &v : d) {
                v *= scale;
            }
        }
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            const auto &[s, y] = pairs[k];
            const double beta = detail::dot(y, d) / detail::dot(y, s);
            for (std::size_t i = 0; i < n; ++i) {
                d[i] += (alpha[k] - beta) * s[i];
            }
        }
        for (auto &v : d) {
            v = -v;
        }
        double slope = detail::dot(g, d);
        if (!(slope < 0.0)) {
            pairs.clear();
            const double scale = 1.0 / std::max(1.0, detail::inf_norm(g));
            for (std::size_t i = 0; i < n; ++i) {
                d[i] = -g[i] * scale;
            }
            slope = detail::dot(g, d);
        }

        double step = 1.0;
        double fn = 0.0;
        bool accepted = false;
        for (int tries = 0; tries < 60; ++tries) {
            for (std::size_t i = 0; i < n; ++i) {
                xn[i] = x[i] + step * d[i];
            }
            fn = fg(xn, gn);
            if (std::isfinite(fn) && fn <= f + 1e-4 * step * slope && fn <= f) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            return finish(detail::inf_norm(g) < std::sqrt(opt.tol_grad), "line search stalled");
        }

        std::vector<double> s(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = xn[i] - x[i];
            y[i] = gn[i] - g[i];
        }
        if (detail::dot(s, y) > 1e-16 * std::sqrt(detail::dot(s, s) * detail::dot(y, y))) {
            pairs.emplace_back(std::move(s), std::move(y));
            if (pairs.size() > opt.memory) {
                pairs.pop_front();
            }
        }
        const double previous = f;
        x = xn;
        g = gn;
        f = fn;
        const double gnorm = detail::inf_norm(g);
        r.history.push_back({it, f, gnorm});
        if (gnorm < opt.tol_grad) {
            return finish(true, "gradient");
        }
        if (stall.update(previous, f)) {
            return finish(true, "energy");
        }
    }
    return finish(false, "max_iter");
}

/**
 * Nelder-Mead with standard coefficients (reflect 1, expand 2, contract 1/2,
 * shrink 1/2). An iteration is one simplex update; convergence additionally
 * requires the spread of vertex values to fall below tol_energy. After
 * converging the simplex is rebuilt once around the best point; the run
 * ends when that restart no longer improves by tol_energy.
 */
[[nodiscard]] inline OptimizeResult nelder_mead_minimize(const ObjectiveFn &f,
                                                         std::vector<double> x0,
                                                         const OptimizerOptions &opt) {
    const std::size_t n = x0.size();
    OptimizeResult r;
    double f0 = f(x0);
    detail::check_finite(f0, "nelder-mead");
    r.history.push_back({0, f0, std::nullopt});
    if (n == 0) {
        r.x = x0;
        r.f = f0;
        r.converged = true;
        r.reason = "no parameters";
        return r;
    }

    std::vector<std::vector<double>> pts;
    std::vector<double> vals;
    auto build = [&](const std::vector<double> &centre, double fc) {
        pts.assign(1, centre);
        vals.assign(1, fc);
        for (std::size_t i = 0; i < n; ++i) {
            auto p = centre;
            p[i] += opt.simplex_step;
            pts.push_back(p);
            vals.push_back(f(p));
            detail::check_finite(vals.back(), "nelder-mead");
        }
    };
    build(x0, f0);

    std::size_t it = 0;
    double restart_best = f0;
    bool restarted = false;
    detail::StallCounter stall{opt.tol_energy};
    double best = f0;
    std::vector<std::size_t> order(n + 1);
    while (it < opt.max_iter) {
        ++it;
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        const std::size_t ib = order.front();
        const std::size_t iw = order.back();
        const std::size_t is = order[n - 1];

        std::vector<double> centroid(n, 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t i = 0; i < n; ++i) {
                centroid[i] += pts[order[k]][i] / static_cast<double>(n);
            }
        }
        auto towards = [&](double t) {
            std::vector<double> p(n);
            for (std::size_t i = 0; i < n; ++i) {
                p[i] = centroid[i] + t * (pts[iw][i] - centroid[i]);
            }
            return p;
        };
        auto xr = towards(-1.0);
        const double fr = f(xr);
        if (fr < vals[ib]) {
            auto xe = towards(-2.0);
            const double fe = f(xe);
            if (fe < fr) {
                pts[iw] = std::move(xe);
                vals[iw] = fe;
            } else {
                pts[iw] = std::move(xr);
                vals[iw] = fr;
            }
        } else if (fr < vals[is]) {
            pts[iw] = std::move(xr);
            vals[iw] = fr;
        } else {
            const bool outside = fr < vals[iw];
            auto xc = towards(outside ? -0.5 : 0.5);
            const double fc = f(xc);
            if (fc < (outside ? fr : vals[iw])) {
                pts[iw] = std::move(xc);
                vals[iw] = fc;
            } else {
                for (std::size_t k = 0; k <= n; ++k) {
                    if (k == ib) {
                        continue;
                    }
                    for (std::size_t i = 0; i < n; ++i) {
                        pts[k][i] = pts[ib][i] + 0.5 * (pts[k][i] - pts[ib][i]);
                    }
                    vals[k] = f(pts[k]);
                }
            }
        }
        for (double v : vals) {
            detail::check_finite(v, "nelder-mead");
        }
        const double previous = best;
        const auto [lo, hi] = std::minmax_element(vals.begin(), vals.end());
        best = *lo;
        r.history.push_back({it, best, std::nullopt});
        const bool flat = *hi - *lo < opt.tol_energy;
        if (stall.update(previous, best) && flat) {
            const std::size_t b = static_cast<std::size_t>(lo - vals.begin());
            if (restarted && restart_best - best < opt.tol_energy) {
                r.x = pts[b];
                r.f = best;
                r.iterations = it;
                r.converged = true;
                r.reason = "energy";
                return r;
            }
            restarted = true;
            restart_best = best;
            stall.hits = 0;
            const auto centre = pts[b];
            build(centre, best);
        }
    }
    const auto b = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
    r.x = pts[b];
    r.f = vals[b];
    r.iterations = it;
    r.converged = false;
    r.reason = "max_iter";
    return r;
}

} // namespace vqesim
