#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <queue>
#include <vector>

#include "cyclekit/errors.hpp"

namespace cyclekit::numerics {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    explicit GaussLegendreRule(std::size_t n) : nodes(n), weights(n) {
        const std::size_t m = (n + 1) / 2;
        for (std::size_t i = 0; i < m; ++i) {
            double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                                (static_cast<double>(n) + 0.5));
            double pp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p1 = 1.0, p2 = 0.0;
                for (std::size_t j = 1; j <= n; ++j) {
                    const double p3 = p2;
                    p2 = p1;
                    const double jj = static_cast<double>(j);
                    p1 = ((2.0 * jj - 1.0) * z * p2 - (jj - 1.0) * p3) / jj;
                }
                pp = static_cast<double>(n) * (z * p1 - p2) / (z * z - 1.0);
                const double z1 = z;
                z = z1 - p1 / pp;
                if (std::fabs(z - z1) <= 1e-15) break;
            }
            nodes[i] = -z;
            nodes[n - 1 - i] = z;
            weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
        }
    }

    /// Integral of f over [a, b].
    template <typename F>
    double integrate(F &&f, double a, double b) const {
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double sum = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(mid + half * nodes[i]);
        return half * sum;
    }
};

/// Globally adaptive composite integration. The subinterval with the largest
/// error estimate (whole rule against two halves) is split until the summed
/// estimate falls below tol or max_segments subintervals exist. Round-off
/// noise in f therefore costs a bounded amount of work.
template <typename F>
double integrate_adaptive(const GaussLegendreRule &rule, F &&f, double a, double b,
                          double tol, int max_depth = 40, std::size_t max_segments = 2048) {
    struct Segment {
        double a, b, left, right, err;
        int depth;
        bool operator<(const Segment &o) const { return err < o.err; }
    };
    auto make = [&](double lo, double hi, double whole, int depth) {
        const double mid = 0.5 * (lo + hi);
        const double l = rule.integrate(f, lo, mid);
        const double r = rule.integrate(f, mid, hi);
        return Segment{lo, hi, l, r, std::fabs(l + r - whole), depth};
    };
    std::priority_queue<Segment> open;
    std::vector<Segment> done;
    open.push(make(a, b, rule.integrate(f, a, b), 0));
    double err_sum = open.top().err;
    while (!open.empty() && err_sum > tol && open.size() + done.size() < max_segments) {
        const Segment s = open.top();
        open.pop();
        if (s.depth >= max_depth || !std::isfinite(s.err)) {
            done.push_back(s);
            continue;
        }
        const double mid = 0.5 * (s.a + s.b);
        const Segment lo = make(s.a, mid, s.left, s.depth + 1);
        const Segment hi = make(mid, s.b, s.right, s.depth + 1);
        err_sum += lo.err + hi.err - s.err;
        open.push(lo);
        open.push(hi);
    }
    double total = 0.0;
    for (const auto &s : done) total += s.left + s.right;
    for (; !open.empty(); open.pop()) total += open.top().left + open.top().right;
    return total;
}

/// Bisection on a sign-changing bracket. Stops when the bracket cannot shrink
/// further in floating point or its width falls below xtol.
template <typename F>
double bisect(F &&f, double lo, double hi, double xtol = 0.0, int max_iter = 200) {
    double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) throw NumericalError("bisect: bracket does not change sign");
    for (int i = 0; i < max_iter; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi || hi - lo <= xtol) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Median of a copy of the values; empty input yields NaN.
inline double median(std::vector<double> v) {
    if (v.empty()) return std::nan("");
    const auto n = v.size();
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n / 2), v.end());
    const double hi = v[n / 2];
    if (n % 2 == 1) return hi;
    const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n / 2));
    return 0.5 * (lo + hi);
}

} // namespace cyclekit::numerics
