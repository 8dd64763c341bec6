#pragma once

// Annual GDP-per-capita ingestion, Delta G / DI reconstruction and the
// per-year energy index with implied periods.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cyclekit/csv.hpp"
#include "cyclekit/errors.hpp"
#include "cyclekit/integrator.hpp"
#include "cyclekit/model.hpp"
#include "cyclekit/numerics.hpp"
#include "cyclekit/period_analysis.hpp"

namespace cyclekit {

struct GdpRow {
    int year = 0;
    double gdp = 0.0; ///< dollars per capita, constant prices
};

struct GdpSeries {
    std::vector<GdpRow> rows;

    /// Years strictly increasing and consecutive, gdp > 0.
    void validate() const {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (!(rows[i].gdp > 0.0))
                throw ValidationError("gdp must be > 0 (year " + std::to_string(rows[i].year) + ")");
            if (i == 0) continue;
            const int prev = rows[i - 1].year, cur = rows[i].year;
            if (cur <= prev)
                throw ValidationError("years must be strictly increasing (" + std::to_string(prev) +
                                      " then " + std::to_string(cur) + ")");
            if (cur != prev + 1) throw GapError(prev + 1);
        }
    }
};

struct YearValue {
    int year = 0;
    double value = 0.0;
};

/// dg(year) = (gdp(year) - gdp(year - 1)) / 1000, in 10^3 dollars.
struct DeltaGSeries {
    std::vector<YearValue> rows;
};

/// Parse "year,gdp" CSV text. Errors carry 1-based line numbers.
inline GdpSeries load_series(std::istream &in) {
    GdpSeries series;
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (csv::trim(line).empty()) continue;
        const auto cells = csv::split(line);
        if (!header_seen) {
            if (cells.size() != 2 || cells[0] != "year" || cells[1] != "gdp")
                throw ParseError("expected header 'year,gdp'", line_no);
            header_seen = true;
            continue;
        }
        if (cells.size() != 2) throw ParseError("expected 2 fields", line_no);
        const int year = csv::parse_int(cells[0], line_no);
        const double gdp = csv::parse_double(cells[1], line_no);
        if (!series.rows.empty()) {
            const int prev = series.rows.back().year;
            if (year <= prev)
                throw ParseError("year " + std::to_string(year) + " does not follow " +
                                     std::to_string(prev),
                                 line_no);
            if (year != prev + 1) throw GapError(prev + 1);
        }
        if (!(gdp > 0.0)) throw ParseError("gdp must be > 0", line_no);
        series.rows.push_back({year, gdp});
    }
    if (!header_seen) throw ParseError("missing header 'year,gdp'", line_no + 1);
    return series;
}

inline GdpSeries load_series_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    return load_series(in);
}

inline void write_series(std::ostream &os, const GdpSeries &s) {
    os << "year,gdp\n";
    for (const auto &r : s.rows) csv::write_row(os, {std::to_string(r.year), csv::format_number(r.gdp, 12)});
}

inline DeltaGSeries delta_g(const GdpSeries &s) {
    if (s.rows.size() < 2) throw ValidationError("delta_g needs at least 2 years of GDP");
    DeltaGSeries out;
    out.rows.reserve(s.rows.size() - 1);
    for (std::size_t i = 1; i < s.rows.size(); ++i)
        out.rows.push_back(
            {s.rows[i].year, units::dollars_to_position(s.rows[i].gdp - s.rows[i - 1].gdp)});
    return out;
}

/// DI(i) = (dg(i) + dg(i-1) - 2c) / (2b), from the second Delta G year on.
inline std::vector<YearValue> di_reconstruct(const DeltaGSeries &d, const LinearMap &lm) {
    std::vector<YearValue> out;
    for (std::size_t i = 1; i < d.rows.size(); ++i)
        out.push_back({d.rows[i].year,
                       (d.rows[i].value + d.rows[i - 1].value - 2.0 * lm.c) / (2.0 * lm.b)});
    return out;
}

/// Pearson correlation coefficient.
inline double pearson(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw ValidationError("pearson: series lengths differ");
    if (a.size() < 3) throw ValidationError("pearson: need at least 3 points");
    const auto n = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    if (saa == 0.0 || sbb == 0.0) throw ValidationError("pearson: zero variance");
    return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

struct DgDiCorrelations {
    double averaged = 0.0; ///< corr((dg(i) + dg(i-1)) / 2, DI(i))
    double plain = 0.0;    ///< corr(dg(i), DI(i))
};

/// Both correlations over paired observations (index-aligned, same years).
inline DgDiCorrelations dg_di_correlations(std::span<const double> dg, std::span<const double> di) {
    if (dg.size() != di.size()) throw ValidationError("dg and DI series lengths differ");
    std::vector<double> avg, di_tail;
    for (std::size_t i = 1; i < dg.size(); ++i) {
        avg.push_back(0.5 * (dg[i] + dg[i - 1]));
        di_tail.push_back(di[i]);
    }
    return {pearson(avg, di_tail), pearson(dg, di)};
}

enum class VelocityEstimator {
    Shooting, ///< velocity whose 1-year model flight hits both neighbours (averaged)
    Central,  ///< (dg(y+1) - dg(y-1)) / 2
    Forward,  ///< dg(y+1) - dg(y)
};

inline std::optional<VelocityEstimator> velocity_estimator_from_string(std::string_view s) {
    if (s == "shooting") return VelocityEstimator::Shooting;
    if (s == "central") return VelocityEstimator::Central;
    if (s == "forward") return VelocityEstimator::Forward;
    return std::nullopt;
}

/// Initial velocity v such that the flight from (x0, v) lands on `target`
/// after `horizon` years, found by bracketing plus Illinois false position.
template <ConservativeField Field>
double shoot_velocity(const Field &field, double x0, double target, double horizon = 1.0,
                      double dt = 1e-3) {
    const auto steps = static_cast<int>(std::llround(horizon / dt));
    auto miss = [&](double v) {
        PhaseState s{x0, v};
        for (int i = 0; i < steps; ++i) s = step(field, s, dt);
        return s.x - target;
    };
    const double guess = (target - x0) / horizon;
    double lo = guess, hi = guess;
    double f_lo = miss(lo), f_hi = f_lo;
    if (f_lo == 0.0) return guess;
    double width = 0.25 + 0.5 * std::fabs(guess);
    for (int i = 0; i < 60 && (f_lo > 0.0) == (f_hi > 0.0); ++i) {
        if (f_lo > 0.0) {
            hi = lo;
            f_hi = f_lo;
            lo = guess - width;
            f_lo = miss(lo);
        } else {
            lo = hi;
            f_lo = f_hi;
            hi = guess + width;
            f_hi = miss(hi);
        }
        width *= 2.0;
    }
    if ((f_lo > 0.0) == (f_hi > 0.0)) throw NumericalError("shooting: could not bracket velocity");

    int side = 0;
    for (int i = 0; i < 200; ++i) {
        const double v = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
        const double f = miss(v);
        if (std::fabs(f) < 1e-13 || hi - lo < 1e-13 * std::max(1.0, std::fabs(v))) return v;
        if ((f > 0.0) == (f_hi > 0.0)) {
            hi = v;
            f_hi = f;
            if (side == 1) f_lo *= 0.5;
            side = 1;
        } else {
            lo = v;
            f_lo = f;
            if (side == -1) f_hi *= 0.5;
            side = -1;
        }
    }
    return 0.5 * (lo + hi);
}

/// Velocity at year index i (needs both neighbours).
template <ConservativeField Field>
double estimate_velocity(const Field &field, const DeltaGSeries &d, std::size_t i,
                         VelocityEstimator method) {
    const double prev = d.rows[i - 1].value, cur = d.rows[i].value, next = d.rows[i + 1].value;
    switch (method) {
    case VelocityEstimator::Central: return 0.5 * (next - prev);
    case VelocityEstimator::Forward: return next - cur;
    case VelocityEstimator::Shooting: {
        const double forward = shoot_velocity(field, cur, next);
        const double backward = -shoot_velocity(field, cur, prev);
        return 0.5 * (forward + backward);
    }
    }
    return 0.0;
}

struct CaseSpec {
    std::string name;
    Model model;
};

inline std::vector<CaseSpec> preset_cases() {
    return {{"case_i", presets::case_i()}, {"case_ii", presets::case_ii()}, {"case_iii", presets::case_iii()}};
}

struct EnergyCell {
    std::optional<double> energy;
    std::optional<double> period;
    bool diverged = false; ///< energy outside the oscillatory range or at a separatrix
};

struct EnergyRow {
    int year = 0;
    double dg = 0.0;
    std::optional<double> di;
    std::vector<EnergyCell> cells; ///< one per case
};

struct EnergyIndex {
    std::vector<std::string> case_names;
    std::vector<double> well_bottoms; ///< global V minimum per case
    std::vector<EnergyRow> rows;
};

struct EnergyIndexOptions {
    VelocityEstimator velocity = VelocityEstimator::Shooting;
    LinearMap lm = presets::modified_linear_map(); ///< for the DI column
};

/// Per interior year y: x = dg(y), v from the chosen estimator, E = v^2/2 + V(x)
/// and the implied period in the well containing x. Endpoint years carry no E.
inline EnergyIndex energy_index(const DeltaGSeries &d, const std::vector<CaseSpec> &cases,
                                const EnergyIndexOptions &opt = {}) {
    if (d.rows.size() < 3) throw ValidationError("energy index needs at least 3 Delta G years");
    EnergyIndex out;
    std::vector<Hamiltonian> fields;
    std::vector<PotentialProfile> profiles;
    for (const auto &c : cases) {
        c.model.validate();
        out.case_names.push_back(c.name);
        fields.push_back(c.model.hamiltonian());
        profiles.push_back(find_extrema(fields.back()));
        out.well_bottoms.push_back(profiles.back().global_min().energy);
    }

    for (std::size_t i = 0; i < d.rows.size(); ++i) {
        EnergyRow row;
        row.year = d.rows[i].year;
        row.dg = d.rows[i].value;
        if (i > 0)
            row.di = (d.rows[i].value + d.rows[i - 1].value - 2.0 * opt.lm.c) / (2.0 * opt.lm.b);
        row.cells.resize(cases.size());
        const bool interior = i > 0 && i + 1 < d.rows.size();
        if (interior) {
            for (std::size_t k = 0; k < cases.size(); ++k) {
                const auto &field = fields[k];
                const auto &profile = profiles[k];
                const double x = row.dg;
                const double v = estimate_velocity(field, d, i, opt.velocity);
                const double energy = field.energy({x, v});
                auto &cell = row.cells[k];
                cell.energy = energy;
                try {
                    cell.period = period_quadrature(field, profile, energy, well_containing(profile, x));
                } catch (const SeparatrixError &) {
                    cell.diverged = true;
                } catch (const NoOscillationError &) {
                    cell.diverged = true;
                }
            }
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

/// Years whose energy above the well bottom is a strict local maximum over a
/// 3-year window and exceeds `factor` times the median excitation.
inline std::vector<int> find_peaks(const EnergyIndex &index, std::size_t case_idx, double factor = 1.5) {
    const double bottom = index.well_bottoms.at(case_idx);
    std::vector<double> excitation;
    for (const auto &r : index.rows)
        if (r.cells[case_idx].energy) excitation.push_back(*r.cells[case_idx].energy - bottom);
    const double threshold = factor * numerics::median(excitation);

    std::vector<int> peaks;
    for (std::size_t i = 1; i + 1 < index.rows.size(); ++i) {
        const auto &prev = index.rows[i - 1].cells[case_idx].energy;
        const auto &cur = index.rows[i].cells[case_idx].energy;
        const auto &next = index.rows[i + 1].cells[case_idx].energy;
        if (!prev || !cur || !next) continue;
        if (*cur > *prev && *cur > *next && *cur - bottom > threshold) peaks.push_back(index.rows[i].year);
    }
    return peaks;
}

/// Output table: year, dg, di, E_<case>..., T_<case>... (6 significant digits,
/// empty cells for absent values, "inf" for divergent periods).
inline void write_energy_index(std::ostream &os, const EnergyIndex &index) {
    std::vector<std::string> header{"year", "dg", "di"};
    for (const auto &n : index.case_names) header.push_back("E_" + n);
    for (const auto &n : index.case_names) header.push_back("T_" + n);
    csv::write_row(os, header);
    for (const auto &r : index.rows) {
        std::vector<std::string> cells{std::to_string(r.year), csv::format_number(r.dg),
                                       csv::format_optional(r.di)};
        for (const auto &c : r.cells) cells.push_back(csv::format_optional(c.energy));
        for (const auto &c : r.cells)
            cells.push_back(c.diverged ? std::string("inf") : csv::format_optional(c.period));
        csv::write_row(os, cells);
    }
}

/// A Delta G outlier added on top of the model trajectory in one year.
struct Shock {
    int year = 0;
    double delta = 0.0; ///< 10^3 dollars
};

/// GDP series whose Delta G follows an exact model trajectory sampled once a
/// year: the first Delta G year (first_year + 1) sits at t = 0 on `start`.
inline GdpSeries synthetic_gdp(const Model &model, PhaseState start, int first_year, int n_rows,
                               double base_gdp, std::span<const Shock> shocks = {},
                               double dt = 1e-4) {
    if (n_rows < 2) throw ValidationError("synthetic series needs at least 2 rows");
    const auto field = model.hamiltonian();
    const auto per_year = static_cast<int>(std::llround(1.0 / dt));
    GdpSeries s;
    s.rows.push_back({first_year, base_gdp});
    PhaseState state = start;
    for (int k = 1; k < n_rows; ++k) {
        if (k > 1)
            for (int j = 0; j < per_year; ++j) state = step(field, state, dt);
        const int year = first_year + k;
        double dg = state.x;
        for (const auto &sh : shocks)
            if (sh.year == year) dg += sh.delta;
        s.rows.push_back({year, s.rows.back().gdp + units::position_to_dollars(dg)});
    }
    s.validate();
    return s;
}

} // namespace cyclekit
