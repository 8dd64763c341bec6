#pragma once

// Difference-equation dynamics of the optimal-DI model and a classifier for
// the qualitative regime as a function of the relaxation rate a.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "cyclekit/errors.hpp"
#include "cyclekit/model.hpp"

namespace cyclekit {

struct MapState {
    double di = 0.0;      ///< DI(i)
    double dg = 0.0;      ///< Delta G(i), 10^3 dollars
    double dg_prev = 0.0; ///< Delta G(i-1), 10^3 dollars
};

enum class Regime { ConvergesToFixedPoint, Periodic, Diverges, Inconclusive };

inline std::string to_string(Regime r) {
    switch (r) {
    case Regime::ConvergesToFixedPoint: return "converges-to-fixed-point";
    case Regime::Periodic: return "periodic";
    case Regime::Diverges: return "diverges";
    case Regime::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

struct RegimeReport {
    Regime regime = Regime::Inconclusive;
    std::optional<double> fixed_point; ///< dg at convergence, iff ConvergesToFixedPoint
    std::optional<long> period_steps;  ///< first near-return step, iff Periodic
    long steps = 0;                    ///< steps taken before a criterion fired
};

struct MapOptions {
    double divergence_bound = 1e6;  ///< |dg| beyond this is a divergence event
    double convergence_tol = 1e-9;  ///< |dg(i+1) - dg(i)| below this means converged
    double return_tol = 1e-3;       ///< Euclidean distance in (dg, DI) for a near-return
};

/// DI consistent with the averaged relation dg(i) + dg(i-1) = 2 b DI(i) + 2 c.
inline double consistent_di(const LinearMap &lm, double dg, double dg_prev) {
    return (dg + dg_prev - 2.0 * lm.c) / (2.0 * lm.b);
}

/// Build a state whose DI satisfies the averaged linear relation.
inline MapState consistent_state(const Model &m, double dg, double dg_prev) {
    return {consistent_di(m.lm, dg, dg_prev), dg, dg_prev};
}

/// One step of the modified map:
///   DI(i+1) = DI(i) + a (ODI(dg(i)) - DI(i))
///   dg(i+1) = 2 b DI(i+1) + 2 c - dg(i)
/// Throws DivergenceError when the new |dg| exceeds the bound or is not finite.
inline MapState map_step(double a, const Model &m, const MapState &s,
                         double divergence_bound = MapOptions{}.divergence_bound) {
    MapState next;
    next.di = s.di + a * (m.odi_at(s.dg) - s.di);
    next.dg = 2.0 * m.lm.b * next.di + 2.0 * m.lm.c - s.dg;
    next.dg_prev = s.dg;
    if (!std::isfinite(next.dg) || std::fabs(next.dg) > divergence_bound)
        throw DivergenceError("discrete map diverged: |dg| exceeded bound", 1);
    return next;
}

/// The two-term recursion in dg alone:
///   dg(i+1) = 2 a b ODI(dg(i)) + 2 a c - a dg(i) - (a - 1) dg(i-1)
inline double combined_step(double a, const Model &m, double dg, double dg_prev,
                            double divergence_bound = MapOptions{}.divergence_bound) {
    const double next = 2.0 * a * m.lm.b * m.odi_at(dg) + 2.0 * a * m.lm.c - a * dg -
                        (a - 1.0) * dg_prev;
    if (!std::isfinite(next) || std::fabs(next) > divergence_bound)
        throw DivergenceError("combined recursion diverged: |dg| exceeded bound", 1);
    return next;
}

/// Energy analogue along a discrete orbit, with v = dg(i) - dg(i-1).
inline double discrete_energy(const Model &m, double dg, double dg_prev) {
    const double v = dg - dg_prev;
    return 0.5 * v * v + m.potential(dg);
}

/// Orbit of up to `steps` map steps including the initial state. Stops early
/// (without throwing) at a divergence event; `diverged` reports it.
struct Orbit {
    std::vector<MapState> states;
    bool diverged = false;
};

inline Orbit simulate_orbit(double a, const Model &m, const MapState &initial, long steps,
                            const MapOptions &opt = {}) {
    Orbit orbit;
    orbit.states.reserve(static_cast<std::size_t>(steps) + 1);
    orbit.states.push_back(initial);
    MapState s = initial;
    for (long i = 0; i < steps; ++i) {
        try {
            s = map_step(a, m, s, opt.divergence_bound);
        } catch (const DivergenceError &) {
            orbit.diverged = true;
            break;
        }
        orbit.states.push_back(s);
    }
    return orbit;
}

/// Classify the long-run behaviour of the orbit from `initial`.
///
/// Per step, in order: divergence (bound exceeded), convergence (successive
/// dg change below tolerance), near-return to the initial point in (dg, DI).
/// Nothing firing within `horizon` steps yields Regime::Inconclusive.
inline RegimeReport classify_regime(double a, const Model &m, const MapState &initial,
                                    long horizon, const MapOptions &opt = {}) {
    if (!(a > 0.0)) throw ValidationError("relaxation rate a must be > 0");
    if (horizon < 100) throw ValidationError("classification horizon must be >= 100 steps");

    RegimeReport report;
    MapState s = initial;
    for (long i = 1; i <= horizon; ++i) {
        MapState next;
        try {
            next = map_step(a, m, s, opt.divergence_bound);
        } catch (const DivergenceError &) {
            report.regime = Regime::Diverges;
            report.steps = i;
            return report;
        }
        if (std::fabs(next.dg - s.dg) < opt.convergence_tol) {
            report.regime = Regime::ConvergesToFixedPoint;
            report.fixed_point = next.dg;
            report.steps = i;
            return report;
        }
        s = next;
        if (std::hypot(s.dg - initial.dg, s.di - initial.di) < opt.return_tol) {
            report.regime = Regime::Periodic;
            report.period_steps = i;
            report.steps = i;
            return report;
        }
    }
    report.steps = horizon;
    return report;
}

} // namespace cyclekit
