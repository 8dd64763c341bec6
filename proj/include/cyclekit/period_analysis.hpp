#pragma once

// Period-energy relation of a one-dimensional conservative system:
// potential extrema, turning points, the turning-point period integral and
// sampled period curves with separatrix handling.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "cyclekit/errors.hpp"
#include "cyclekit/model.hpp"
#include "cyclekit/numerics.hpp"

namespace cyclekit {

enum class ExtremumKind { Min, Max };

struct Extremum {
    double x = 0.0;
    double energy = 0.0;     ///< V(x)
    double curvature = 0.0;  ///< V''(x), finite difference
    ExtremumKind kind = ExtremumKind::Min;
    bool degenerate = false; ///< |V''| < 1e-8
};

enum class PotentialShape { SingleWell, Winebottle };

inline std::string to_string(PotentialShape s) {
    return s == PotentialShape::SingleWell ? "single-well" : "winebottle";
}

struct PotentialProfile {
    std::vector<Extremum> extrema; ///< ordered by x
    PotentialShape shape = PotentialShape::SingleWell;
    std::vector<std::string> warnings;

    std::vector<Extremum> minima() const { return filter(ExtremumKind::Min); }
    std::vector<Extremum> maxima() const { return filter(ExtremumKind::Max); }

    const Extremum &global_min() const {
        const Extremum *best = nullptr;
        for (const auto &e : extrema)
            if (e.kind == ExtremumKind::Min && (!best || e.energy < best->energy)) best = &e;
        return *best;
    }

    /// Energy of the interior local maximum, for winebottle shapes.
    std::optional<double> separatrix_energy() const {
        if (shape != PotentialShape::Winebottle) return std::nullopt;
        return maxima().front().energy;
    }

private:
    std::vector<Extremum> filter(ExtremumKind k) const {
        std::vector<Extremum> out;
        for (const auto &e : extrema)
            if (e.kind == k) out.push_back(e);
        return out;
    }
};

struct ExtremaScan {
    double half_width = 10.0; ///< scan [center - half_width, center + half_width]
    double grid = 1e-3;
    double xtol = 1e-10;
};

/// V'' = -dF/dx by central difference.
template <ConservativeField Field>
double potential_curvature(const Field &field, double x) {
    const double h = 1e-5 * std::max(1.0, std::fabs(x));
    return -(field.force(x + h) - field.force(x - h)) / (2.0 * h);
}

/// Roots of F(x) = 0 by a sign-change scan plus bisection, classified by the
/// sign of V''.
template <ConservativeField Field>
PotentialProfile find_extrema(const Field &field, const ExtremaScan &scan = {}) {
    PotentialProfile profile;
    const double lo = field.center() - scan.half_width;
    const auto n = static_cast<long>(std::llround(2.0 * scan.half_width / scan.grid));
    auto force = [&](double x) { return field.force(x); };

    double x_prev = lo;
    double f_prev = force(lo);
    for (long i = 1; i <= n; ++i) {
        const double x = lo + static_cast<double>(i) * scan.grid;
        const double f = force(x);
        const bool change = (f_prev < 0.0 && f >= 0.0) || (f_prev > 0.0 && f <= 0.0);
        if (change) {
            double root = (f == 0.0) ? x : numerics::bisect(force, x_prev, x, scan.xtol);
            Extremum e;
            e.x = root;
            e.energy = field.potential(root);
            e.curvature = potential_curvature(field, root);
            e.kind = e.curvature > 0.0 ? ExtremumKind::Min : ExtremumKind::Max;
            e.degenerate = std::fabs(e.curvature) < 1e-8;
            if (e.degenerate)
                profile.warnings.push_back("degenerate extremum near x = " + std::to_string(root));
            if (profile.extrema.empty() || std::fabs(profile.extrema.back().x - root) > scan.grid)
                profile.extrema.push_back(e);
        }
        x_prev = x;
        f_prev = f;
    }

    const auto mins = profile.minima().size();
    const auto maxs = profile.maxima().size();
    if (mins == 1 && maxs == 0) {
        profile.shape = PotentialShape::SingleWell;
    } else if (mins == 2 && maxs == 1 && profile.extrema[1].kind == ExtremumKind::Max) {
        profile.shape = PotentialShape::Winebottle;
    } else {
        throw NumericalError("unsupported potential shape: " + std::to_string(mins) +
                             " minima, " + std::to_string(maxs) + " maxima");
    }
    return profile;
}

enum class Well { Left, Right };

/// Which family of closed orbits a sample belongs to.
enum class OrbitKind { Single, Left, Right, Spanning };

inline std::string to_string(OrbitKind k) {
    switch (k) {
    case OrbitKind::Single: return "single";
    case OrbitKind::Left: return "left";
    case OrbitKind::Right: return "right";
    case OrbitKind::Spanning: return "spanning";
    }
    return "unknown";
}

struct TurningPoints {
    double x_minus = 0.0;
    double x_plus = 0.0;
    OrbitKind orbit = OrbitKind::Single;
};

namespace detail {

/// First point beyond `from` (in direction `dir`) where V exceeds E.
template <ConservativeField Field>
double outer_bracket(const Field &field, double from, double dir, double energy) {
    double step = 0.5;
    for (int i = 0; i < 200; ++i) {
        const double x = from + dir * step;
        if (field.potential(x) > energy) return x;
        step *= 2.0;
    }
    throw NumericalError("could not bracket turning point");
}

template <ConservativeField Field>
double crossing(const Field &field, double a, double b, double energy) {
    return numerics::bisect([&](double x) { return field.potential(x) - energy; }, a, b);
}

template <ConservativeField Field>
TurningPoints outer_pair(const Field &field, double left_anchor, double right_anchor,
                         double energy, OrbitKind kind) {
    const double lo = outer_bracket(field, left_anchor, -1.0, energy);
    const double hi = outer_bracket(field, right_anchor, +1.0, energy);
    return {crossing(field, lo, left_anchor, energy), crossing(field, right_anchor, hi, energy), kind};
}

} // namespace detail

/// Which well a position belongs to (winebottle only; Left below the barrier).
inline std::optional<Well> well_containing(const PotentialProfile &profile, double x) {
    if (profile.shape != PotentialShape::Winebottle) return std::nullopt;
    return x < profile.extrema[1].x ? Well::Left : Well::Right;
}

/// Orbit kinds that exist at energy E.
inline std::vector<OrbitKind> available_orbits(const PotentialProfile &profile, double energy) {
    if (profile.shape == PotentialShape::SingleWell) {
        if (energy > profile.extrema[0].energy) return {OrbitKind::Single};
        return {};
    }
    const auto &left = profile.extrema[0];
    const auto &barrier = profile.extrema[1];
    const auto &right = profile.extrema[2];
    if (energy > barrier.energy) return {OrbitKind::Spanning};
    std::vector<OrbitKind> out;
    if (energy > left.energy) out.push_back(OrbitKind::Left);
    if (energy > right.energy) out.push_back(OrbitKind::Right);
    return out;
}

/// Turning points x- < x+ with V(x-) = V(x+) = E bounding a closed orbit.
///
/// Below a winebottle barrier with both wells open, `well` must be given;
/// above the barrier the selector is ignored.
template <ConservativeField Field>
TurningPoints turning_points(const Field &field, const PotentialProfile &profile, double energy,
                             std::optional<Well> well = std::nullopt) {
    if (!std::isfinite(energy)) throw ValidationError("energy must be finite");
    const auto orbits = available_orbits(profile, energy);
    if (orbits.empty())
        throw NoOscillationError("energy " + std::to_string(energy) + " is below the well minimum");

    if (profile.shape == PotentialShape::SingleWell) {
        const double xm = profile.extrema[0].x;
        return detail::outer_pair(field, xm, xm, energy, OrbitKind::Single);
    }

    const auto &left = profile.extrema[0];
    const auto &barrier = profile.extrema[1];
    const auto &right = profile.extrema[2];
    if (orbits.front() == OrbitKind::Spanning)
        return detail::outer_pair(field, left.x, right.x, energy, OrbitKind::Spanning);

    OrbitKind chosen;
    if (well) {
        chosen = *well == Well::Left ? OrbitKind::Left : OrbitKind::Right;
        if (std::find(orbits.begin(), orbits.end(), chosen) == orbits.end())
            throw NoOscillationError("energy " + std::to_string(energy) +
                                     " is below the bottom of the " +
                                     (chosen == OrbitKind::Left ? "left" : "right") + " well");
    } else if (orbits.size() == 1) {
        chosen = orbits.front();
    } else {
        throw AmbiguousWellError("energy " + std::to_string(energy) +
                                 " admits orbits in both wells; select left or right");
    }

    if (chosen == OrbitKind::Left) {
        const double lo = detail::outer_bracket(field, left.x, -1.0, energy);
        return {detail::crossing(field, lo, left.x, energy),
                detail::crossing(field, left.x, barrier.x, energy), OrbitKind::Left};
    }
    const double hi = detail::outer_bracket(field, right.x, +1.0, energy);
    return {detail::crossing(field, barrier.x, right.x, energy),
            detail::crossing(field, right.x, hi, energy), OrbitKind::Right};
}

struct QuadratureOptions {
    std::size_t nodes = 256;
    double rel_tol = 1e-11;
    double separatrix_rel = 1e-6;   ///< |E - V_max| within this fraction of |V_max| diverges
    double divergence_period = 200; ///< years; longer periods are reported as divergent
};

inline const numerics::GaussLegendreRule &gauss_legendre(std::size_t n) {
    static thread_local std::vector<numerics::GaussLegendreRule> cache;
    for (const auto &r : cache)
        if (r.nodes.size() == n) return r;
    cache.emplace_back(n);
    return cache.back();
}

/// Throws SeparatrixError if E sits on a local-maximum energy.
inline void check_separatrix(const PotentialProfile &profile, double energy, double rel) {
    for (const auto &e : profile.extrema) {
        if (e.kind != ExtremumKind::Max) continue;
        const double scale = std::max(std::fabs(e.energy), 1e-12);
        if (std::fabs(energy - e.energy) <= rel * scale)
            throw SeparatrixError("energy " + std::to_string(energy) +
                                      " is at the separatrix; period diverges",
                                  energy);
    }
}

/// T(E) = sqrt(2) * integral of dx / sqrt(E - V(x)) between the turning points.
///
/// x = mid + half * sin(theta) removes the inverse-square-root endpoint
/// singularities; the smooth theta integrand is handled by adaptive
/// Gauss-Legendre. Near the endpoints E - V is evaluated from a second-order
/// expansion about the turning point to avoid cancellation.
template <ConservativeField Field>
double period_quadrature(const Field &field, const PotentialProfile &profile, double energy,
                         std::optional<Well> well = std::nullopt,
                         const QuadratureOptions &opt = {}) {
    check_separatrix(profile, energy, opt.separatrix_rel);
    const auto tp = turning_points(field, profile, energy, well);
    const double mid = 0.5 * (tp.x_minus + tp.x_plus);
    const double half = 0.5 * (tp.x_plus - tp.x_minus);
    if (!(half > 0.0)) throw NumericalError("degenerate orbit: turning points coincide");

    const double f_plus = field.force(tp.x_plus), f_minus = field.force(tp.x_minus);
    const double df_plus = -potential_curvature(field, tp.x_plus);
    const double df_minus = -potential_curvature(field, tp.x_minus);

    auto integrand = [&](double theta) {
        const double s = std::sin(theta);
        const double c = std::cos(theta);
        // 1 - |sin theta| without cancellation.
        const double gap_angle = 0.5 * (0.5 * std::numbers::pi - std::fabs(theta));
        const double one_minus = 2.0 * std::sin(gap_angle) * std::sin(gap_angle);
        double kinetic;
        if (one_minus < 1e-5) {
            const double delta = half * one_minus; // distance in from the turning point
            kinetic = theta > 0.0 ? -f_plus * delta + 0.5 * df_plus * delta * delta
                                  : f_minus * delta + 0.5 * df_minus * delta * delta;
        } else {
            kinetic = energy - field.potential(mid + half * s);
        }
        if (!(kinetic > 0.0)) return 0.0;
        return half * c / std::sqrt(kinetic);
    };

    const auto &rule = gauss_legendre(opt.nodes);
    const double a = -0.5 * std::numbers::pi, b = 0.5 * std::numbers::pi;
    const double first = rule.integrate(integrand, a, b);
    const double integral =
        numerics::integrate_adaptive(rule, integrand, a, b, opt.rel_tol * std::fabs(first));
    const double period = std::numbers::sqrt2 * integral;
    if (!std::isfinite(period) || period > opt.divergence_period)
        throw SeparatrixError("period exceeds divergence limit near energy " +
                                  std::to_string(energy),
                              energy);
    return period;
}

enum class SampleFlag { Ok, Separatrix, NoOscillation, Failed };

inline std::string to_string(SampleFlag f) {
    switch (f) {
    case SampleFlag::Ok: return "ok";
    case SampleFlag::Separatrix: return "separatrix";
    case SampleFlag::NoOscillation: return "no-oscillation";
    case SampleFlag::Failed: return "failed";
    }
    return "unknown";
}

struct PeriodSample {
    double energy = 0.0;
    std::optional<double> period; ///< absent for gaps
    OrbitKind orbit = OrbitKind::Single;
    SampleFlag flag = SampleFlag::Ok;
};

struct PeriodCurve {
    std::vector<PeriodSample> samples;
    PotentialShape shape = PotentialShape::SingleWell;
    std::optional<double> separatrix_energy;

    /// Ok samples of one orbit family have strictly decreasing periods in E.
    bool strictly_decreasing(OrbitKind kind) const {
        std::optional<double> last;
        for (const auto &s : samples) {
            if (s.orbit != kind || s.flag != SampleFlag::Ok) continue;
            if (last && !(*s.period < *last)) return false;
            last = s.period;
        }
        return true;
    }
};

enum class Spacing { Linear, Log };

/// Sample T(E) over [e_min, e_max]. Per-sample failures become flagged gaps.
/// Below a winebottle barrier every open well contributes its own sample.
template <ConservativeField Field>
PeriodCurve period_curve(const Field &field, double e_min, double e_max, int n_samples,
                         Spacing spacing = Spacing::Linear, const QuadratureOptions &opt = {}) {
    if (n_samples < 1) throw ValidationError("period curve needs at least one sample");
    if (!(e_max >= e_min)) throw ValidationError("energy range must satisfy E_min <= E_max");
    if (spacing == Spacing::Log && !(e_min > 0.0))
        throw ValidationError("log spacing needs E_min > 0");

    const auto profile = find_extrema(field);
    PeriodCurve curve;
    curve.shape = profile.shape;
    curve.separatrix_energy = profile.separatrix_energy();

    for (int i = 0; i < n_samples; ++i) {
        const double frac = n_samples == 1 ? 0.0 : static_cast<double>(i) / (n_samples - 1);
        const double energy = spacing == Spacing::Linear
                                  ? e_min + frac * (e_max - e_min)
                                  : e_min * std::pow(e_max / e_min, frac);
        const auto orbits = available_orbits(profile, energy);
        if (orbits.empty()) {
            curve.samples.push_back({energy, std::nullopt, OrbitKind::Single, SampleFlag::NoOscillation});
            continue;
        }
        for (auto kind : orbits) {
            PeriodSample sample{energy, std::nullopt, kind, SampleFlag::Ok};
            std::optional<Well> well;
            if (kind == OrbitKind::Left) well = Well::Left;
            if (kind == OrbitKind::Right) well = Well::Right;
            try {
                sample.period = period_quadrature(field, profile, energy, well, opt);
            } catch (const SeparatrixError &) {
                sample.flag = SampleFlag::Separatrix;
            } catch (const NoOscillationError &) {
                sample.flag = SampleFlag::NoOscillation;
            } catch (const Error &) {
                sample.flag = SampleFlag::Failed;
            }
            curve.samples.push_back(sample);
        }
    }
    return curve;
}

} // namespace cyclekit
