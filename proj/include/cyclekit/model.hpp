#pragma once

// Model constants and the closed-form scalar functions of the optimal-DI
// business-cycle model.
//
// Unit convention used throughout the library:
//   position x (= Delta G)   10^3 dollars
//   time t                   years
//   velocity v               10^3 dollars / year
//   energy E, potential V    10^6 (dollars^2 / year^2), i.e. (10^3 dollars)^2
// Raw-dollar values are converted at the data boundary only (see units::).

#include <cmath>
#include <concepts>
#include <optional>
#include <string>
#include <string_view>

#include "cyclekit/errors.hpp"

namespace cyclekit {

/// Optimal-DI response ODI(x) = A + B tanh(C (x - D)).
struct OdiParams {
    double A = 0.0; ///< DI offset (dimensionless)
    double B = 1.0; ///< DI amplitude (dimensionless), > 0
    double C = 1.0; ///< inverse position, 1 / (10^3 dollars), > 0
    double D = 0.0; ///< position, 10^3 dollars

    void validate() const {
        if (!std::isfinite(A) || !std::isfinite(B) || !std::isfinite(C) || !std::isfinite(D))
            throw ValidationError("ODI parameters must be finite");
        if (!(B > 0.0)) throw ValidationError("ODI parameter B must be > 0");
        if (!(C > 0.0)) throw ValidationError("ODI parameter C must be > 0");
    }

    friend bool operator==(const OdiParams &, const OdiParams &) = default;
};

/// Averaged linear relation (dg(i+1) + dg(i)) / 2 = b DI(i+1) + c.
struct LinearMap {
    double b = 1.0; ///< 10^3 dollars per DI point, > 0
    double c = 0.0; ///< 10^3 dollars

    void validate() const {
        if (!std::isfinite(b) || !std::isfinite(c))
            throw ValidationError("linear map parameters must be finite");
        if (!(b > 0.0)) throw ValidationError("linear map parameter b must be > 0");
    }

    friend bool operator==(const LinearMap &, const LinearMap &) = default;
};

/// beta = b B / C, gamma = b A + c.
struct DerivedParams {
    double beta = 0.0;  ///< (10^3 dollars)^2
    double gamma = 0.0; ///< 10^3 dollars
};

inline DerivedParams derive(const OdiParams &odi, const LinearMap &lm) {
    return {lm.b * odi.B / odi.C, lm.b * odi.A + lm.c};
}

struct PhaseState {
    double x = 0.0; ///< 10^3 dollars
    double v = 0.0; ///< 10^3 dollars / year
};

/// log(cosh(y)) without overflow for large |y| and without cancellation near 0.
inline double log_cosh(double y) {
    const double ay = std::fabs(y);
    if (ay < 1.0) {
        const double s = std::sinh(0.5 * ay);
        return std::log1p(2.0 * s * s);
    }
    return ay - std::log(2.0) + std::log1p(std::exp(-2.0 * ay));
}

inline double odi_eval(const OdiParams &p, double x) {
    return p.A + p.B * std::tanh(p.C * (x - p.D));
}

/// Right-hand side of the equation of motion, 4 [b ODI(x) - x + c].
inline double force(const DerivedParams & /*dp*/, const OdiParams &odi,
                    const LinearMap &lm, double x) {
    return 4.0 * (lm.b * odi_eval(odi, x) - x + lm.c);
}

/// V(x) = -4 beta log cosh(C (x - D)) + 2 (x - gamma)^2, integration constant zero.
inline double potential(const DerivedParams &dp, const OdiParams &odi, double x) {
    const double d = x - dp.gamma;
    return -4.0 * dp.beta * log_cosh(odi.C * (x - odi.D)) + 2.0 * d * d;
}

inline double total_energy(const DerivedParams &dp, const OdiParams &odi, PhaseState s) {
    return 0.5 * s.v * s.v + potential(dp, odi, s.x);
}

/// A one-dimensional conservative force field: F = -dV/dx.
/// center() is a point inside the region where the interesting structure
/// (extrema) of V lives; root scans are anchored on it.
template <typename F>
concept ConservativeField = requires(const F &f, double x) {
    { f.force(x) } -> std::convertible_to<double>;
    { f.potential(x) } -> std::convertible_to<double>;
    { f.center() } -> std::convertible_to<double>;
};

/// The Hamiltonian H = v^2 / 2 + V(x) in its reduced (beta, gamma, C, D) form.
///
/// beta = 0, gamma = 0 gives the pure harmonic surrogate V = 2 x^2, whose
/// period is exactly pi at every energy.
struct Hamiltonian {
    double beta = 0.0;
    double gamma = 0.0;
    double C = 1.0;
    double D = 0.0;

    static Hamiltonian from(const OdiParams &odi, const LinearMap &lm) {
        const auto dp = derive(odi, lm);
        return {dp.beta, dp.gamma, odi.C, odi.D};
    }
    static Hamiltonian harmonic() { return {0.0, 0.0, 1.0, 0.0}; }

    double force(double x) const {
        return 4.0 * (beta * C * std::tanh(C * (x - D)) + gamma - x);
    }
    double potential(double x) const {
        const double d = x - gamma;
        return -4.0 * beta * log_cosh(C * (x - D)) + 2.0 * d * d;
    }
    double energy(PhaseState s) const { return 0.5 * s.v * s.v + potential(s.x); }
    double center() const { return gamma; }
};

static_assert(ConservativeField<Hamiltonian>);

/// A complete parameter set: ODI response plus the linear Delta G / DI link.
struct Model {
    OdiParams odi;
    LinearMap lm;

    void validate() const {
        odi.validate();
        lm.validate();
    }
    DerivedParams derived() const { return derive(odi, lm); }
    Hamiltonian hamiltonian() const { return Hamiltonian::from(odi, lm); }

    double odi_at(double x) const { return odi_eval(odi, x); }
    double force(double x) const { return cyclekit::force(derived(), odi, lm, x); }
    double potential(double x) const { return cyclekit::potential(derived(), odi, x); }
    double center() const { return derived().gamma; }
};

static_assert(ConservativeField<Model>);

namespace presets {

/// Modified-model linear map, b = 23.6 dollars/point, c = 969 dollars.
inline LinearMap modified_linear_map() { return {0.0236, 0.969}; }
/// Original-model pair (b = 23.8, c = 980). Metadata only; not used by the continuum model.
inline LinearMap original_linear_map() { return {0.0238, 0.980}; }

inline Model case_i() { return {{-5.0, 55.3, 0.628, 0.880}, modified_linear_map()}; }
inline Model case_ii() { return {{-1.0, 48.0, 0.600, 0.900}, modified_linear_map()}; }
inline Model case_iii() { return {{-1.0, 30.0, 1.800, 0.920}, modified_linear_map()}; }

/// "i", "ii" or "iii" (an optional "case_" prefix is accepted).
inline std::optional<Model> by_name(std::string_view name) {
    if (name.starts_with("case_")) name.remove_prefix(5);
    if (name == "i") return case_i();
    if (name == "ii") return case_ii();
    if (name == "iii") return case_iii();
    return std::nullopt;
}

} // namespace presets

namespace units {

inline constexpr double kDollarsPerUnit = 1000.0;

inline double dollars_to_position(double dollars) { return dollars / kDollarsPerUnit; }
inline double position_to_dollars(double x) { return x * kDollarsPerUnit; }

/// ODI parameters quoted against raw dollars (C in 1/dollar, D in dollars).
inline OdiParams odi_from_raw(const OdiParams &raw) {
    return {raw.A, raw.B, raw.C * kDollarsPerUnit, raw.D / kDollarsPerUnit};
}
/// Linear map quoted in raw dollars (b in dollars/point, c in dollars).
inline LinearMap linear_map_from_raw(const LinearMap &raw) {
    return {raw.b / kDollarsPerUnit, raw.c / kDollarsPerUnit};
}

} // namespace units

} // namespace cyclekit
