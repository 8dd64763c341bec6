#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cyclekit/integrator.hpp"
#include "cyclekit/period_analysis.hpp"
#include "oracles.hpp"

using namespace cyclekit;

namespace {

/// Start at the upper turning point of the orbit with energy E.
PhaseState start_at(const Hamiltonian &h, double energy) {
    const auto profile = find_extrema(h);
    return {turning_points(h, profile, energy).x_plus, 0.0};
}

/// The minimum refined to full double precision.
double exact_minimum(const Hamiltonian &h) {
    const double xm = find_extrema(h).global_min().x;
    return numerics::bisect([&](double x) { return h.force(x); }, xm - 1e-6, xm + 1e-6);
}

std::vector<std::pair<double, double>> loop(const PhaseTrajectory &pt, double t0, double period) {
    std::vector<std::pair<double, double>> out;
    for (const auto &p : pt.points)
        if (p.t >= t0 && p.t <= t0 + period) out.emplace_back(p.x, p.di);
    return out;
}

} // namespace

TEST(Step, EquilibriumIsPreserved) {
    const auto h = presets::case_i().hamiltonian();
    const double xm = exact_minimum(h);
    PhaseState s{xm, 0.0};
    for (int i = 0; i < 10000; ++i) s = step(h, s, 1e-2);
    EXPECT_NEAR(s.x, xm, 1e-12);
    EXPECT_NEAR(s.v, 0.0, 1e-12);
}

TEST(Step, HarmonicSurrogateReturnsAfterPi) {
    const auto h = Hamiltonian::harmonic();
    const auto traj = simulate(h, {1.0, 0.0}, std::numbers::pi, 1e-3);
    const auto &last = traj.samples.back();
    // The last sample sits at ceil(pi / dt) dt; step back onto t = pi exactly.
    const auto back = step(h, {last.x, last.v}, std::numbers::pi - last.t);
    EXPECT_NEAR(back.x, 1.0, 1e-5);
    EXPECT_NEAR(back.v, 0.0, 1e-5);
}

TEST(Step, TimeReversalRoundTrip) {
    for (const auto &m : {presets::case_i(), presets::case_ii(), presets::case_iii()}) {
        const auto h = m.hamiltonian();
        const PhaseState s0{2.0, 0.3};
        PhaseState s = s0;
        for (int i = 0; i < 100000; ++i) s = step(h, s, 1e-2);
        s.v = -s.v;
        for (int i = 0; i < 100000; ++i) s = step(h, s, 1e-2);
        EXPECT_NEAR(s.x, s0.x, 1e-9 * std::fabs(s0.x));
        EXPECT_NEAR(-s.v, s0.v, 1e-9 * std::fabs(s0.v));
    }
}

TEST(Simulate, SampleCountAndUniformTimestamps) {
    const auto h = presets::case_i().hamiltonian();
    const auto traj = simulate(h, {1.0, 0.0}, 0.1, 0.03);
    ASSERT_EQ(traj.size(), 5u); // ceil(0.1 / 0.03) + 1
    for (std::size_t i = 1; i < traj.size(); ++i)
        EXPECT_NEAR(traj.samples[i].t - traj.samples[i - 1].t, 0.03, 1e-15);
    EXPECT_EQ(simulate(h, {1.0, 0.0}, 1.0, 1e-2).size(), 101u);
    EXPECT_EQ(traj.energy_series.size(), traj.size());
}

TEST(Simulate, RejectsOversizedStep) {
    const auto h = presets::case_iii().hamiltonian();
    EXPECT_THROW(simulate(h, {1.0, 0.0}, 10.0, 0.051), ValidationError);
    EXPECT_THROW(simulate(h, {1.0, 0.0}, 0.0, 0.01), ValidationError);
    EXPECT_THROW(simulate(h, {1.0, 0.0}, 1.0, -0.01), ValidationError);
    EXPECT_NO_THROW(simulate(h, {1.0, 0.0}, 1.0, 0.05));
}

TEST(Simulate, ShortRunDriftAtMeasurementStep) {
    const auto h = presets::case_i().hamiltonian();
    const auto traj = simulate(h, start_at(h, 1.57), 20.0, kMeasurementStep);
    EXPECT_LT(max_relative_energy_drift(traj), 1e-6);
}

TEST(Simulate, LongRunDriftAllCases) {
    for (const auto &m : {presets::case_i(), presets::case_ii(), presets::case_iii()}) {
        const auto h = m.hamiltonian();
        const auto traj = simulate(h, {2.44, 0.0}, 1e4, kPlottingStep);
        EXPECT_LT(max_relative_energy_drift(traj), 1e-4);
        // No secular trend: the last thousand years are no worse than the first.
        const auto &e = traj.energy_series;
        const std::size_t block = 100000;
        auto spread = [&](std::size_t from) {
            double lo = e[from], hi = e[from];
            for (std::size_t i = from; i < from + block; ++i) {
                lo = std::min(lo, e[i]);
                hi = std::max(hi, e[i]);
            }
            return hi - lo;
        };
        EXPECT_LT(spread(e.size() - block), 1.5 * spread(0));
    }
}

TEST(Simulate, TurningPointStartBoundsTheOrbit) {
    const auto h = presets::case_i().hamiltonian();
    const auto s0 = start_at(h, 0.12);
    const auto traj = simulate(h, s0, 30.0, kMeasurementStep);
    double hi = -1e9;
    for (const auto &s : traj.samples) hi = std::max(hi, s.x);
    EXPECT_NEAR(hi, s0.x, 1e-6);
}

TEST(Simulate, RangeMatchesTurningPoints) {
    const auto h = presets::case_i().hamiltonian();
    const auto profile = find_extrema(h);
    for (double energy : {0.12, 1.57}) {
        const auto tp = turning_points(h, profile, energy);
        const auto traj = simulate(h, {tp.x_plus, 0.0}, 30.0, kMeasurementStep);
        double lo = 1e9, hi = -1e9;
        for (const auto &s : traj.samples) {
            lo = std::min(lo, s.x);
            hi = std::max(hi, s.x);
        }
        EXPECT_NEAR(lo, tp.x_minus, 1e-4);
        EXPECT_NEAR(hi, tp.x_plus, 1e-4);
    }
}

TEST(PeriodFromTrajectory, PaperEnergiesCaseOne) {
    const auto h = presets::case_i().hamiltonian();
    EXPECT_NEAR(period_from_trajectory(simulate(h, start_at(h, 1.57), 60.0, kMeasurementStep)), 5.5, 0.2);
    EXPECT_NEAR(period_from_trajectory(simulate(h, start_at(h, 0.12), 60.0, kMeasurementStep)), 7.0, 0.2);
}

TEST(PeriodFromTrajectory, HarmonicSurrogateIsPiAtAnyAmplitude) {
    const auto h = Hamiltonian::harmonic();
    for (double amp : {1e-3, 1.0, 1e3})
        EXPECT_NEAR(period_from_trajectory(simulate(h, {amp, 0.0}, 20.0, kMeasurementStep)),
                    std::numbers::pi, 1e-3);
}

TEST(PeriodFromTrajectory, SecondOrderConvergence) {
    const auto h = presets::case_ii().hamiltonian();
    const auto profile = find_extrema(h);
    const double exact = period_quadrature(h, profile, 1.0);
    const auto s0 = start_at(h, 1.0);
    const double coarse = std::fabs(period_from_trajectory(simulate(h, s0, 200.0, 0.04)) - exact);
    const double fine = std::fabs(period_from_trajectory(simulate(h, s0, 200.0, 0.02)) - exact);
    EXPECT_NEAR(coarse / fine, 4.0, 0.6);
}

TEST(PeriodFromTrajectory, TooShortThrows) {
    const auto h = presets::case_i().hamiltonian();
    EXPECT_THROW(period_from_trajectory(simulate(h, {2.0, 0.0}, 8.0, 1e-2)),
                 InsufficientOscillationsError);
}

TEST(PhaseTrajectory, FixedPointCollapsesToOnePoint) {
    const auto m = presets::case_i();
    const auto h = m.hamiltonian();
    const double xs = exact_minimum(h);
    const auto pt = phase_trajectory(simulate(h, {xs, 0.0}, 3.0, 1e-2), m.lm);
    ASSERT_FALSE(pt.points.empty());
    for (const auto &p : pt.points) {
        EXPECT_NEAR(p.x, xs, 1e-12);
        EXPECT_NEAR(p.di, (xs - m.lm.c) / m.lm.b, 1e-9);
    }
}

TEST(PhaseTrajectory, FirstYearOmittedAndDiFormula) {
    const auto m = presets::case_i();
    const auto traj = simulate(m.hamiltonian(), {2.0, 0.0}, 5.0, 1e-2);
    const auto pt = phase_trajectory(traj, m.lm);
    ASSERT_FALSE(pt.points.empty());
    EXPECT_NEAR(pt.points.front().t, 1.0, 1e-9);
    EXPECT_EQ(pt.points.size(), traj.size() - 100);
    const auto &p = pt.points[250];
    const auto &now = traj.samples[350];
    const auto &lag = traj.samples[250];
    EXPECT_NEAR(p.di, (now.x + lag.x - 2 * m.lm.c) / (2 * m.lm.b), 1e-9);
}

TEST(PhaseTrajectory, HigherEnergyLoopEnclosesLower) {
    const auto m = presets::case_i();
    const auto h = m.hamiltonian();
    const auto profile = find_extrema(h);
    const auto pt_hi = phase_trajectory(simulate(h, start_at(h, 1.57), 20.0, 1e-2), m.lm);
    const auto pt_lo = phase_trajectory(simulate(h, start_at(h, 0.12), 20.0, 1e-2), m.lm);
    const auto outer = loop(pt_hi, 2.0, period_quadrature(h, profile, 1.57));
    const auto inner = loop(pt_lo, 2.0, period_quadrature(h, profile, 0.12));
    for (const auto &[x, di] : inner) EXPECT_TRUE(oracle::inside(outer, x, di)) << x << ", " << di;
}

TEST(PhaseTrajectory, LoopAreaGrowsWithEnergy) {
    const auto m = presets::case_i();
    const auto h = m.hamiltonian();
    const auto profile = find_extrema(h);
    double last = 0.0;
    for (double energy : {0.1, 0.5, 1.0, 1.5}) {
        const double period = period_quadrature(h, profile, energy);
        const auto pt = phase_trajectory(simulate(h, start_at(h, energy), 20.0, 1e-2), m.lm);
        const double area = loop_area(pt, 2.0, period);
        EXPECT_NEAR(area, oracle::shoelace(loop(pt, 2.0, period)), 1e-9 * area);
        EXPECT_GT(area, last);
        last = area;
    }
}
