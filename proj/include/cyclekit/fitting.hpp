#pragma once

// Parameter estimation from paired (Delta G, DI) observations: closed-form
// least squares for the linear map and multi-start Nelder-Mead for the ODI
// response.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "cyclekit/errors.hpp"
#include "cyclekit/model.hpp"
#include "cyclekit/numerics.hpp"

namespace cyclekit {

struct NelderMeadOptions {
    int max_iter = 2000;
    double ftol_rel = 1e-12;
    double ftol_abs = 1e-300;
    double xtol = 1e-10;
};

struct NelderMeadResult {
    std::vector<double> x;
    double f = std::numeric_limits<double>::infinity();
    int iterations = 0;
    bool converged = false;
    std::vector<double> history; ///< best objective after each iteration
};

/// Downhill simplex minimisation. After a converged run the simplex is rebuilt
/// around the best vertex and the search restarted, until a restart no longer
/// improves the optimum or the iteration budget is spent.
template <typename Objective>
NelderMeadResult nelder_mead(Objective &&f, std::vector<double> x0, std::vector<double> steps,
                             const NelderMeadOptions &opt = {}) {
    const std::size_t n = x0.size();
    NelderMeadResult res;
    res.x = x0;
    res.f = f(x0);

    auto run = [&](const std::vector<double> &start, std::vector<double> scale) {
        std::vector<std::vector<double>> pts(n + 1, start);
        std::vector<double> fv(n + 1);
        for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += scale[i];
        for (std::size_t i = 0; i <= n; ++i) fv[i] = f(pts[i]);
        std::vector<std::size_t> order(n + 1);

        auto combine = [&](const std::vector<double> &c, const std::vector<double> &w, double t) {
            std::vector<double> out(n);
            for (std::size_t k = 0; k < n; ++k) out[k] = c[k] + t * (w[k] - c[k]);
            return out;
        };

        while (res.iterations < opt.max_iter) {
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return fv[a] < fv[b]; });
            const auto best = order.front(), worst = order.back(), second = order[n - 1];

            if (fv[best] < res.f) {
                res.f = fv[best];
                res.x = pts[best];
            }

            double spread = 0.0;
            for (std::size_t i = 0; i <= n; ++i)
                for (std::size_t k = 0; k < n; ++k)
                    spread = std::max(spread, std::fabs(pts[i][k] - pts[best][k]) /
                                                  (1.0 + std::fabs(pts[best][k])));
            if (fv[worst] - fv[best] <= opt.ftol_abs + opt.ftol_rel * std::fabs(fv[best]) &&
                spread <= opt.xtol)
                return true;

            ++res.iterations;
            std::vector<double> centroid(n, 0.0);
            for (std::size_t i = 0; i <= n; ++i) {
                if (i == worst) continue;
                for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[i][k] / static_cast<double>(n);
            }

            const auto reflected = combine(centroid, pts[worst], -1.0);
            const double fr = f(reflected);
            if (fr < fv[best]) {
                const auto expanded = combine(centroid, pts[worst], -2.0);
                const double fe = f(expanded);
                if (fe < fr) {
                    pts[worst] = expanded;
                    fv[worst] = fe;
                } else {
                    pts[worst] = reflected;
                    fv[worst] = fr;
                }
            } else if (fr < fv[second]) {
                pts[worst] = reflected;
                fv[worst] = fr;
            } else {
                const bool outside = fr < fv[worst];
                const auto contracted =
                    outside ? combine(centroid, reflected, 0.5) : combine(centroid, pts[worst], 0.5);
                const double fc = f(contracted);
                if (fc < std::min(fr, fv[worst])) {
                    pts[worst] = contracted;
                    fv[worst] = fc;
                } else {
                    for (std::size_t i = 0; i <= n; ++i) {
                        if (i == best) continue;
                        pts[i] = combine(pts[best], pts[i], 0.5);
                        fv[i] = f(pts[i]);
                    }
                }
            }
            const double iter_best = *std::min_element(fv.begin(), fv.end());
            if (iter_best < res.f) {
                res.f = iter_best;
                res.x = pts[static_cast<std::size_t>(
                    std::min_element(fv.begin(), fv.end()) - fv.begin())];
            }
            res.history.push_back(res.f);
        }
        return false;
    };

    std::vector<double> start = x0;
    for (int restart = 0; restart < 20; ++restart) {
        const double before = res.f;
        const bool ok = run(start, steps);
        if (!ok) {
            res.converged = false;
            return res;
        }
        res.converged = true;
        if (restart > 0 && before - res.f <= opt.ftol_abs + opt.ftol_rel * std::fabs(res.f)) break;
        start = res.x;
        for (auto &s : steps) s *= 0.1;
    }
    return res;
}

struct LinearFitResult {
    LinearMap params;
    double residual = 0.0; ///< RMS of the fitted relation
    std::size_t n_points = 0;
    bool converged = true;
    double se_b = 0.0; ///< OLS standard errors
    double se_c = 0.0;
};

/// Least squares for dg = b DI + c, or with `averaged`,
/// (dg(i+1) + dg(i)) / 2 = b DI(i+1) + c.
inline LinearFitResult fit_linear(std::span<const double> dg, std::span<const double> di, bool averaged) {
    if (dg.size() != di.size()) throw ValidationError("fit_linear: series lengths differ");
    if (dg.size() < 3) throw ValidationError("fit_linear: need at least 3 points");

    std::vector<double> xs, ys;
    if (averaged) {
        for (std::size_t i = 0; i + 1 < dg.size(); ++i) {
            ys.push_back(0.5 * (dg[i + 1] + dg[i]));
            xs.push_back(di[i + 1]);
        }
    } else {
        ys.assign(dg.begin(), dg.end());
        xs.assign(di.begin(), di.end());
    }
    const auto n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0, sum_sq = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        sum_sq += xs[i] * xs[i];
    }
    if (!(sxx > 1e-14 * std::max(sum_sq, 1e-300)))
        throw ValidationError("fit_linear: DI has zero variance (rank-deficient)");

    LinearFitResult r;
    r.params.b = sxy / sxx;
    r.params.c = my - r.params.b * mx;
    r.n_points = xs.size();
    double sse = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = ys[i] - (r.params.b * xs[i] + r.params.c);
        sse += e * e;
    }
    r.residual = std::sqrt(sse / n);
    if (xs.size() > 2) {
        const double s2 = sse / (n - 2.0);
        r.se_b = std::sqrt(s2 / sxx);
        r.se_c = std::sqrt(s2 * (1.0 / n + mx * mx / sxx));
    }
    return r;
}

struct OdiFitOptions {
    int starts = 8;
    int max_iter = 2000; ///< per start
    std::uint64_t seed = 20081;
};

struct OdiFitResult {
    OdiParams params;
    double residual = 0.0; ///< RMS of DI - ODI(dg)
    std::size_t n_points = 0;
    bool converged = false;
    bool degenerate = false;     ///< DI carries no signal; B collapsed towards 0
    int best_start = 0;
    std::vector<double> history; ///< best SSE per iteration of the winning start
};

/// Starting point from the data: A = mean DI, B = half DI range,
/// D = median dg, C = 1 / IQR(dg).
inline OdiParams heuristic_odi_init(std::span<const double> dg, std::span<const double> di) {
    if (dg.empty() || di.empty()) throw ValidationError("heuristic init needs data");
    OdiParams p;
    p.A = std::accumulate(di.begin(), di.end(), 0.0) / static_cast<double>(di.size());
    const auto [mn, mx] = std::minmax_element(di.begin(), di.end());
    p.B = 0.5 * (*mx - *mn);
    if (!(p.B > 0.0)) p.B = 1.0;
    std::vector<double> sorted(dg.begin(), dg.end());
    std::sort(sorted.begin(), sorted.end());
    p.D = numerics::median(sorted);
    auto quantile = [&](double q) {
        const double pos = q * static_cast<double>(sorted.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const auto hi = std::min(lo + 1, sorted.size() - 1);
        return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
    };
    const double iqr = quantile(0.75) - quantile(0.25);
    p.C = iqr > 0.0 ? 1.0 / iqr : 1.0;
    return p;
}

/// Minimise sum (DI - ODI(dg))^2 over (A, log B, log C, D) from `init` plus
/// jittered restarts. Lowest residual wins; ties go to the earlier start.
inline OdiFitResult fit_odi(std::span<const double> dg, std::span<const double> di,
                            std::optional<OdiParams> init = std::nullopt,
                            const OdiFitOptions &opt = {}) {
    if (dg.size() != di.size()) throw ValidationError("fit_odi: series lengths differ");
    if (dg.size() < 5) throw ValidationError("fit_odi: need at least 5 points");
    const OdiParams start = init ? *init : heuristic_odi_init(dg, di);
    start.validate();

    auto unpack = [](const std::vector<double> &t) {
        return OdiParams{t[0], std::exp(t[1]), std::exp(t[2]), t[3]};
    };
    auto sse = [&](const std::vector<double> &t) {
        const auto p = unpack(t);
        double s = 0.0;
        for (std::size_t i = 0; i < dg.size(); ++i) {
            const double e = di[i] - odi_eval(p, dg[i]);
            s += e * e;
        }
        return std::isfinite(s) ? s : std::numeric_limits<double>::max();
    };

    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    NelderMeadOptions nm;
    nm.max_iter = opt.max_iter;
    // Round-off floor of the sum of squares for data of this magnitude.
    double scale = 1.0;
    for (double v : di) scale += v * v;
    nm.ftol_abs = 1e-20 * scale;

    OdiFitResult best;
    double best_sse = std::numeric_limits<double>::infinity();
    for (int k = 0; k < std::max(1, opt.starts); ++k) {
        OdiParams p = start;
        if (k > 0) {
            p.A += 0.1 * start.B * normal(rng);
            p.B *= std::exp(0.2 * normal(rng));
            p.C *= std::exp(0.2 * normal(rng));
            p.D += 0.2 / start.C * normal(rng);
        }
        std::vector<double> theta{p.A, std::log(p.B), std::log(p.C), p.D};
        std::vector<double> steps{0.05 * p.B, 0.1, 0.1, 0.1 / p.C};
        auto r = nelder_mead(sse, theta, steps, nm);
        if (r.f < best_sse) {
            best_sse = r.f;
            best.params = unpack(r.x);
            best.converged = r.converged;
            best.best_start = k;
            best.history = std::move(r.history);
        }
    }
    best.n_points = dg.size();
    best.residual = std::sqrt(best_sse / static_cast<double>(dg.size()));

    const auto [mn, mx] = std::minmax_element(di.begin(), di.end());
    best.degenerate = (*mx == *mn) || best.params.B < 1e-6 * std::max(1.0, std::fabs(best.params.A));
    return best;
}

} // namespace cyclekit
