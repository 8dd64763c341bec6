#pragma once

// Velocity-Verlet integration of x'' = F(x), trajectory-based period
// measurement and the (x, DI) phase-space reconstruction.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "cyclekit/errors.hpp"
#include "cyclekit/model.hpp"

namespace cyclekit {

/// Largest accepted step (years). Keeps omega * dt small for every preset.
inline constexpr double kMaxStep = 0.05;
inline constexpr double kMeasurementStep = 1e-3;
inline constexpr double kPlottingStep = 1e-2;

struct TrajectorySample {
    double t = 0.0;
    double x = 0.0;
    double v = 0.0;
};

struct Trajectory {
    double dt = 0.0;
    std::vector<TrajectorySample> samples;
    std::vector<double> energy_series;

    std::size_t size() const { return samples.size(); }
    double duration() const { return samples.empty() ? 0.0 : samples.back().t - samples.front().t; }
};

/// Velocity Verlet: half kick, drift, half kick.
template <ConservativeField Field>
PhaseState step(const Field &field, PhaseState s, double dt) {
    const double v_half = s.v + 0.5 * dt * field.force(s.x);
    const double x_new = s.x + dt * v_half;
    return {x_new, v_half + 0.5 * dt * field.force(x_new)};
}

template <ConservativeField Field>
double energy_of(const Field &field, PhaseState s) {
    return 0.5 * s.v * s.v + field.potential(s.x);
}

/// Integrate from s0 over [0, t_end]; ceil(t_end / dt) + 1 samples at t_i = i dt.
template <ConservativeField Field>
Trajectory simulate(const Field &field, PhaseState s0, double t_end, double dt) {
    if (!(t_end > 0.0)) throw ValidationError("t_end must be > 0");
    if (!(dt > 0.0)) throw ValidationError("dt must be > 0");
    if (dt > kMaxStep) throw ValidationError("dt must not exceed 0.05 years");
    if (!std::isfinite(s0.x) || !std::isfinite(s0.v)) throw ValidationError("initial state must be finite");

    const auto n = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
    Trajectory traj;
    traj.dt = dt;
    traj.samples.reserve(n + 1);
    traj.energy_series.reserve(n + 1);

    PhaseState s = s0;
    double f = field.force(s.x);
    for (std::size_t i = 0;; ++i) {
        traj.samples.push_back({static_cast<double>(i) * dt, s.x, s.v});
        traj.energy_series.push_back(energy_of(field, s));
        if (i == n) break;
        // Inline Verlet reusing the force from the previous half-kick.
        const double v_half = s.v + 0.5 * dt * f;
        s.x += dt * v_half;
        f = field.force(s.x);
        s.v = v_half + 0.5 * dt * f;
        if (!std::isfinite(s.x) || !std::isfinite(s.v))
            throw NumericalError("trajectory became non-finite");
    }
    return traj;
}

/// Times at which v changes sign, linearly interpolated between samples.
struct VelocityCrossings {
    std::vector<double> upward;   ///< v goes from < 0 to >= 0
    std::vector<double> downward; ///< v goes from > 0 to <= 0
};

inline VelocityCrossings velocity_crossings(const Trajectory &traj) {
    VelocityCrossings out;
    const auto &s = traj.samples;
    for (std::size_t i = 1; i < s.size(); ++i) {
        const double v0 = s[i - 1].v, v1 = s[i].v;
        const bool up = v0 < 0.0 && v1 >= 0.0;
        const bool down = v0 > 0.0 && v1 <= 0.0;
        if (!up && !down) continue;
        const double t = s[i - 1].t + (s[i].t - s[i - 1].t) * (v0 / (v0 - v1));
        (up ? out.upward : out.downward).push_back(t);
    }
    return out;
}

/// Mean spacing of same-direction zero crossings of v.
inline double period_from_trajectory(const Trajectory &traj) {
    const auto c = velocity_crossings(traj);
    if (c.upward.size() < 3 || c.downward.size() < 3)
        throw InsufficientOscillationsError(
            "trajectory has fewer than 3 velocity zero crossings of each sign");
    const double span = (c.upward.back() - c.upward.front()) +
                        (c.downward.back() - c.downward.front());
    const double gaps = static_cast<double>(c.upward.size() - 1 + c.downward.size() - 1);
    return span / gaps;
}

/// Relative energy error max |E(t) - E(0)| / |E(0)|.
inline double max_relative_energy_drift(const Trajectory &traj) {
    if (traj.energy_series.empty()) return 0.0;
    const double e0 = traj.energy_series.front();
    double worst = 0.0;
    for (double e : traj.energy_series) worst = std::max(worst, std::fabs(e - e0));
    return worst / std::fabs(e0);
}

struct PhasePoint {
    double t = 0.0;
    double x = 0.0;
    double di = 0.0;
};

struct PhaseTrajectory {
    std::vector<PhasePoint> points;
};

/// DI(t) = (x(t) + x(t - 1) - 2c) / (2b), x(t - 1) interpolated linearly.
/// Samples within the first year have no lagged value and are omitted.
inline PhaseTrajectory phase_trajectory(const Trajectory &traj, const LinearMap &lm) {
    PhaseTrajectory out;
    const auto &s = traj.samples;
    if (s.size() < 2) return out;
    const double t0 = s.front().t;
    const double dt = traj.dt;
    for (const auto &sample : s) {
        const double lag_t = sample.t - 1.0;
        if (lag_t < t0 - 1e-12) continue;
        double pos = (lag_t - t0) / dt;
        if (pos < 0.0) pos = 0.0;
        auto k = static_cast<std::size_t>(std::floor(pos));
        if (k >= s.size() - 1) k = s.size() - 2;
        const double w = pos - static_cast<double>(k);
        const double x_lag = (1.0 - w) * s[k].x + w * s[k + 1].x;
        out.points.push_back({sample.t, sample.x, (sample.x + x_lag - 2.0 * lm.c) / (2.0 * lm.b)});
    }
    return out;
}

/// Shoelace area of the loop traced between t_start and t_start + period.
inline double loop_area(const PhaseTrajectory &pt, double t_start, double period) {
    double twice = 0.0;
    const PhasePoint *first = nullptr;
    const PhasePoint *prev = nullptr;
    for (const auto &p : pt.points) {
        if (p.t < t_start || p.t > t_start + period) continue;
        if (!first) first = &p;
        if (prev) twice += prev->x * p.di - p.x * prev->di;
        prev = &p;
    }
    if (first && prev) twice += prev->x * first->di - first->x * prev->di;
    return 0.5 * std::fabs(twice);
}

} // namespace cyclekit
