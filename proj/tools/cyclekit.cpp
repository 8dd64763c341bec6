// cyclekit: command-line front end for the optimal-DI business-cycle model.
//
// Units: positions (Delta G) in 10^3 dollars, time in years, energies in
// 10^6 units (dollars^2 / year^2).

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cyclekit/cyclekit.hpp"

namespace fs = std::filesystem;
using namespace cyclekit;

namespace {

constexpr const char *kUnits =
    "Units: positions (Delta G) in 10^3 dollars, time in years, energies in 10^6 units "
    "(dollars^2/year^2).";

const std::vector<std::string> kPalette{"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd"};

struct Common {
    std::string out_dir = ".";
    bool svg = false;
};

void add_common(CLI::App *cmd, Common &c) {
    cmd->add_option("--out-dir", c.out_dir, "Directory for all output files (created if missing)");
    cmd->add_flag("--svg", c.svg, "Also write SVG plots");
}

struct ModelChoice {
    std::string case_name = "i";
    std::vector<std::string> params_files;
};

void add_model(CLI::App *cmd, ModelChoice &m) {
    cmd->add_option("--case", m.case_name, "Preset parameter case")
        ->check(CLI::IsMember({"i", "ii", "iii", "case_i", "case_ii", "case_iii"}));
    cmd->add_option("--params", m.params_files,
                    "Key-value parameter file(s) with A, B, C, D (and optionally b, c); later files override");
}

CaseSpec resolve(const ModelChoice &m) {
    if (!m.params_files.empty()) {
        ParamMap merged;
        for (const auto &f : m.params_files)
            for (const auto &[k, v] : read_params_file(f)) merged[k] = v;
        return {"custom", model_from_params(merged)};
    }
    auto name = m.case_name;
    if (name.rfind("case_", 0) == 0) name = name.substr(5);
    return {"case_" + name, *presets::by_name(name)};
}

fs::path prepare(const Common &c) {
    fs::path dir(c.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (!fs::is_directory(dir)) throw ValidationError("cannot create output directory " + c.out_dir);
    return dir;
}

std::ofstream open_out(const fs::path &dir, const std::string &name) {
    std::ofstream out(dir / name);
    if (!out) throw ValidationError("cannot write " + (dir / name).string());
    return out;
}

std::string fmt(double v, int digits = 6) { return csv::format_number(v, digits); }

std::optional<Well> parse_well(const std::string &s) {
    if (s.empty()) return std::nullopt;
    return s == "left" ? Well::Left : Well::Right;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    Common common;
    ModelChoice model;
    std::string x0;
    double v0 = 0.0;
    std::optional<double> energy;
    std::string well;
    std::optional<double> t_end;
    double dt = kMeasurementStep;
    int stride = 10;
};

int run_simulate(const SimulateArgs &a) {
    const auto spec = resolve(a.model);
    const auto h = spec.model.hamiltonian();
    const auto profile = find_extrema(h);
    const auto well = parse_well(a.well);

    PhaseState s0;
    if (a.energy) {
        if (!a.x0.empty()) throw ValidationError("give either --x0/--v0 or --energy, not both");
        const auto tp = turning_points(h, profile, *a.energy, well);
        s0 = {tp.x_plus, 0.0};
    } else {
        if (a.x0.empty()) throw ValidationError("give --x0 (a number or 'min') or --energy");
        if (a.x0 == "min") {
            s0.x = profile.global_min().x;
        } else {
            try {
                s0.x = csv::parse_double(a.x0, 0);
            } catch (const ParseError &) {
                throw ValidationError("--x0 must be a number or 'min'");
            }
        }
        s0.v = a.v0;
    }
    const double energy = h.energy(s0);

    std::optional<double> quad;
    try {
        quad = period_quadrature(h, profile, energy, well_containing(profile, s0.x));
    } catch (const Error &) {
    }
    const double t_end = a.t_end ? *a.t_end : std::max(60.0, quad ? 4.0 * *quad : 0.0);
    const auto traj = simulate(h, s0, t_end, a.dt);
    const auto phase = phase_trajectory(traj, spec.model.lm);

    const auto dir = prepare(a.common);
    {
        auto out = open_out(dir, "trajectory.csv");
        out << "t,x,v,energy\n";
        const auto stride = static_cast<std::size_t>(std::max(1, a.stride));
        for (std::size_t i = 0; i < traj.size(); i += stride) {
            const auto &s = traj.samples[i];
            csv::write_row(out, {fmt(s.t), fmt(s.x), fmt(s.v), fmt(traj.energy_series[i])});
        }
    }
    {
        auto out = open_out(dir, "phase.csv");
        out << "x,di\n";
        const auto stride = static_cast<std::size_t>(std::max(1, a.stride));
        for (std::size_t i = 0; i < phase.points.size(); i += stride)
            csv::write_row(out, {fmt(phase.points[i].x), fmt(phase.points[i].di)});
    }

    double lo = s0.x, hi = s0.x;
    for (const auto &s : traj.samples) {
        lo = std::min(lo, s.x);
        hi = std::max(hi, s.x);
    }
    std::cout << "case: " << spec.name << '\n';
    std::cout << "x0 = " << fmt(s0.x) << ", v0 = " << fmt(s0.v) << '\n';
    std::cout << "E = " << fmt(energy) << " (10^6 units)\n";
    std::cout << "x range = [" << fmt(lo) << ", " << fmt(hi) << "] (10^3 dollars)\n";
    if (hi - lo < 1e-9) {
        std::cout << "period = undefined (fixed point)\n";
    } else {
        try {
            std::cout << "period = " << fmt(period_from_trajectory(traj)) << " years (trajectory)\n";
        } catch (const InsufficientOscillationsError &) {
            std::cout << "period = undefined (fewer than 3 oscillations in " << fmt(t_end) << " years)\n";
        }
    }
    if (quad) std::cout << "period = " << fmt(*quad) << " years (quadrature)\n";
    std::cout << "energy drift = " << fmt(max_relative_energy_drift(traj), 3) << '\n';

    if (a.common.svg) {
        svg::Series xs{"x(t)", {}};
        for (std::size_t i = 0; i < traj.size(); i += 10) xs.points.emplace_back(traj.samples[i].t, traj.samples[i].x);
        auto out = open_out(dir, "trajectory.svg");
        svg::LinePlot("x(t), " + spec.name + ", E = " + fmt(energy, 4), "t (years)", "x (10^3 dollars)")
            .add(std::move(xs))
            .write(out);
        svg::Series ps{"", {}};
        for (std::size_t i = 0; i < phase.points.size(); i += 10)
            ps.points.emplace_back(phase.points[i].x, phase.points[i].di);
        auto pout = open_out(dir, "phase.svg");
        svg::LinePlot("phase space, " + spec.name, "x (10^3 dollars)", "DI").add(std::move(ps)).write(pout);
    }
    return 0;
}

// ------------------------------------------------------------ period-curve

struct PeriodCurveArgs {
    Common common;
    std::vector<std::string> cases;
    std::vector<std::string> params_files;
    double e_min = 0.01;
    double e_max = 10.0;
    int n = 50;
    bool log = false;
};

int run_period_curve(const PeriodCurveArgs &a) {
    std::vector<CaseSpec> specs;
    if (!a.params_files.empty()) {
        specs.push_back(resolve({"i", a.params_files}));
    } else {
        auto names = a.cases.empty() ? std::vector<std::string>{"i", "ii", "iii"} : a.cases;
        for (const auto &n : names) specs.push_back(resolve({n, {}}));
    }
    const auto dir = prepare(a.common);
    svg::LinePlot plot("Period vs energy", "E (10^6 units)", "T (years)");
    std::size_t colour = 0;
    for (const auto &spec : specs) {
        const auto h = spec.model.hamiltonian();
        const auto curve = period_curve(h, a.e_min, a.e_max, a.n, a.log ? Spacing::Log : Spacing::Linear);
        auto out = open_out(dir, "period_curve_" + spec.name + ".csv");
        out << "E,T,well,flags\n";
        std::map<OrbitKind, svg::Series> lines;
        for (const auto &s : curve.samples) {
            csv::write_row(out, {fmt(s.energy), csv::format_optional(s.period), to_string(s.orbit), to_string(s.flag)});
            auto &line = lines[s.orbit];
            line.points.emplace_back(s.energy, s.period ? *s.period : std::nan(""));
        }
        std::cout << spec.name << ": " << to_string(curve.shape);
        if (curve.separatrix_energy) std::cout << ", separatrix E = " << fmt(*curve.separatrix_energy);
        std::cout << ", strictly decreasing = "
                  << (curve.strictly_decreasing(curve.shape == PotentialShape::SingleWell ? OrbitKind::Single
                                                                                           : OrbitKind::Spanning)
                          ? "yes"
                          : "no")
                  << '\n';
        const auto &c = kPalette[colour++ % kPalette.size()];
        for (auto &[kind, line] : lines) {
            line.label = spec.name + (kind == OrbitKind::Single ? "" : " (" + to_string(kind) + ")");
            line.color = c;
            if (kind == OrbitKind::Left) line.dash = "5 3";
            if (kind == OrbitKind::Right) line.dash = "2 2";
            plot.add(std::move(line));
        }
        if (curve.separatrix_energy)
            plot.add(svg::VLine{*curve.separatrix_energy, "separatrix " + spec.name, c});
    }
    if (a.common.svg) {
        plot.add(svg::Series{"pi", {{std::min(a.e_min, 0.0), std::numbers::pi}, {a.e_max, std::numbers::pi}},
                             "#7f7f7f", "4 4"});
        auto out = open_out(dir, "period_curve.svg");
        plot.write(out);
    }
    return 0;
}

// ----------------------------------------------------------- energy-index

struct EnergyIndexArgs {
    Common common;
    std::string data;
    std::string velocity = "shooting";
    double peak_factor = 1.5;
};

int run_energy_index(const EnergyIndexArgs &a) {
    const auto series = load_series_file(a.data);
    const auto d = delta_g(series);
    EnergyIndexOptions opt;
    opt.velocity = *velocity_estimator_from_string(a.velocity);
    const auto index = energy_index(d, preset_cases(), opt);

    const auto dir = prepare(a.common);
    {
        auto out = open_out(dir, "energy_index.csv");
        write_energy_index(out, index);
    }
    for (std::size_t k = 0; k < index.case_names.size(); ++k) {
        const auto peaks = find_peaks(index, k, a.peak_factor);
        std::cout << "peaks " << index.case_names[k] << ":";
        if (peaks.empty()) std::cout << " none";
        for (int y : peaks) std::cout << ' ' << y;
        std::cout << '\n';
    }
    if (a.common.svg) {
        svg::LinePlot plot("Total energy per year", "year", "E (10^6 units)");
        for (std::size_t k = 0; k < index.case_names.size(); ++k) {
            svg::Series s{index.case_names[k], {}, kPalette[k % kPalette.size()]};
            for (const auto &r : index.rows)
                if (r.cells[k].energy) s.points.emplace_back(r.year, *r.cells[k].energy);
            plot.add(std::move(s));
        }
        auto out = open_out(dir, "energy_index.svg");
        plot.write(out);
    }
    return 0;
}

// -------------------------------------------------------------------- map

struct MapArgs {
    Common common;
    ModelChoice model;
    double a = 1.0;
    double dg0 = 1.0;
    double dg_prev0 = 0.9;
    std::optional<double> di0;
    long steps = 200;
    long horizon = 1000000;
};

int run_map(const MapArgs &a) {
    if (!(a.a > 0.0)) throw ValidationError("--a must be > 0");
    if (a.steps < 0) throw ValidationError("--steps must be >= 0");
    const auto spec = resolve(a.model);
    MapState initial = consistent_state(spec.model, a.dg0, a.dg_prev0);
    if (a.di0) initial.di = *a.di0;

    const auto orbit = simulate_orbit(a.a, spec.model, initial, a.steps);
    const auto dir = prepare(a.common);
    {
        auto out = open_out(dir, "orbit.csv");
        out << "step,dg,di\n";
        for (std::size_t i = 0; i < orbit.states.size(); ++i)
            csv::write_row(out, {std::to_string(i), fmt(orbit.states[i].dg), fmt(orbit.states[i].di)});
    }
    const auto report = classify_regime(a.a, spec.model, initial, a.horizon);
    std::cout << "case: " << spec.name << ", a = " << fmt(a.a) << '\n';
    std::cout << "regime: " << to_string(report.regime);
    if (report.fixed_point) std::cout << " (dg* = " << fmt(*report.fixed_point) << ")";
    if (report.period_steps) std::cout << " (return after " << *report.period_steps << " steps)";
    std::cout << '\n';
    std::cout << "steps examined: " << report.steps << '\n';

    if (a.common.svg) {
        svg::Series s{"dg(i)", {}};
        for (std::size_t i = 0; i < orbit.states.size(); ++i)
            s.points.emplace_back(static_cast<double>(i), orbit.states[i].dg);
        auto out = open_out(dir, "orbit.svg");
        svg::LinePlot("Discrete map, a = " + fmt(a.a), "step", "dg (10^3 dollars)").add(std::move(s)).write(out);
    }
    return 0;
}

// -------------------------------------------------------------------- fit

struct FitArgs {
    Common common;
    std::string data;
    std::string mode = "linear";
    std::string form = "averaged";
    std::string init_case;
    std::optional<std::uint64_t> seed;
    int starts = 8;
};

struct Paired {
    std::vector<double> dg, di;
};

Paired load_paired(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    Paired p;
    std::string line;
    int line_no = 0;
    bool header = false;
    std::optional<int> last_year;
    while (std::getline(in, line)) {
        ++line_no;
        if (csv::trim(line).empty()) continue;
        const auto cells = csv::split(line);
        if (!header) {
            if (cells != std::vector<std::string>{"year", "dg", "di"})
                throw ParseError("expected header 'year,dg,di'", line_no);
            header = true;
            continue;
        }
        if (cells.size() != 3) throw ParseError("expected 3 fields", line_no);
        const int year = csv::parse_int(cells[0], line_no);
        if (last_year && year != *last_year + 1) {
            if (year <= *last_year) throw ParseError("years must be strictly increasing", line_no);
            throw GapError(*last_year + 1);
        }
        last_year = year;
        p.dg.push_back(csv::parse_double(cells[1], line_no));
        p.di.push_back(csv::parse_double(cells[2], line_no));
    }
    if (!header) throw ParseError("missing header 'year,dg,di'", line_no + 1);
    return p;
}

int run_fit(const FitArgs &a) {
    const auto data = load_paired(a.data);
    const auto dir = prepare(a.common);
    auto out = open_out(dir, "fit.params");
    if (a.mode == "linear") {
        const auto r = fit_linear(data.dg, data.di, a.form == "averaged");
        write_params(out, params_of(r.params), "linear map fit (" + a.form + "), b in 10^3 dollars per DI point");
        std::cout << "b = " << fmt(r.params.b, 8) << " +- " << fmt(r.se_b, 3) << '\n';
        std::cout << "c = " << fmt(r.params.c, 8) << " +- " << fmt(r.se_c, 3) << '\n';
        std::cout << "residual = " << fmt(r.residual) << ", n = " << r.n_points << ", converged = yes\n";
        return 0;
    }
    OdiFitOptions opt;
    opt.starts = a.starts;
    if (a.seed) {
        opt.seed = *a.seed;
    } else if (const char *env = std::getenv("CYCLEKIT_SEED")) {
        try {
            opt.seed = std::stoull(env);
        } catch (const std::exception &) {
            throw ValidationError("CYCLEKIT_SEED must be a non-negative integer");
        }
    }
    std::optional<OdiParams> init;
    if (!a.init_case.empty()) init = presets::by_name(a.init_case)->odi;
    const auto r = fit_odi(data.dg, data.di, init, opt);
    write_params(out, params_of(r.params), "ODI fit, seed " + std::to_string(opt.seed));
    std::cout << "A = " << fmt(r.params.A, 8) << '\n'
              << "B = " << fmt(r.params.B, 8) << '\n'
              << "C = " << fmt(r.params.C, 8) << '\n'
              << "D = " << fmt(r.params.D, 8) << '\n';
    std::cout << "residual = " << fmt(r.residual) << ", n = " << r.n_points
              << ", converged = " << (r.converged ? "yes" : "no") << (r.degenerate ? ", degenerate" : "") << '\n';
    return 0;
}

// ------------------------------------------------------------ phase-space

struct PhaseSpaceArgs {
    Common common;
    ModelChoice model;
    std::vector<double> energies{0.12, 1.57};
    double dt = kPlottingStep;
};

int run_phase_space(const PhaseSpaceArgs &a) {
    const auto spec = resolve(a.model);
    const auto h = spec.model.hamiltonian();
    const auto profile = find_extrema(h);
    const auto dir = prepare(a.common);
    svg::LinePlot plot("Phase space (x, DI), " + spec.name, "x (10^3 dollars)", "DI");
    auto summary = open_out(dir, "phase_space.csv");
    summary << "E,T,area\n";
    for (std::size_t k = 0; k < a.energies.size(); ++k) {
        const double energy = a.energies[k];
        const auto tp = turning_points(h, profile, energy, well_containing(profile, profile.global_min().x));
        const double period = period_quadrature(h, profile, energy, well_containing(profile, tp.x_plus));
        const auto traj = simulate(h, {tp.x_plus, 0.0}, 1.0 + 1.05 * period, a.dt);
        const auto pt = phase_trajectory(traj, spec.model.lm);
        const double area = loop_area(pt, 1.0, period);
        auto out = open_out(dir, "phase_" + std::to_string(k) + ".csv");
        out << "x,di\n";
        svg::Series s{"E = " + fmt(energy, 4), {}, kPalette[k % kPalette.size()]};
        for (const auto &p : pt.points) {
            if (p.t > 1.0 + period) break;
            csv::write_row(out, {fmt(p.x), fmt(p.di)});
            s.points.emplace_back(p.x, p.di);
        }
        plot.add(std::move(s));
        csv::write_row(summary, {fmt(energy), fmt(period), fmt(area)});
        std::cout << "E = " << fmt(energy) << ": T = " << fmt(period) << " years, loop area = " << fmt(area) << '\n';
    }
    if (a.common.svg) {
        auto out = open_out(dir, "phase_space.svg");
        plot.write(out);
    }
    return 0;
}

// ------------------------------------------------------------------ synth

struct SynthArgs {
    Common common;
    ModelChoice model;
    double x0 = 2.0;
    double v0 = 0.0;
    int first_year = 1960;
    int rows = 45;
    double base_gdp = 8000.0;
    std::vector<std::string> shocks;
    std::string name = "synthetic_gdp.csv";
};

int run_synth(const SynthArgs &a) {
    if (a.name.find('/') != std::string::npos || a.name.find('\\') != std::string::npos || a.name == ".." ||
        a.name.empty())
        throw ValidationError("--name must be a plain file name");
    std::vector<Shock> shocks;
    for (const auto &s : a.shocks) {
        const auto parts = csv::split(s, ':');
        if (parts.size() != 2) throw ValidationError("--shock expects YEAR:DELTA, got '" + s + "'");
        shocks.push_back({csv::parse_int(parts[0], 0), csv::parse_double(parts[1], 0)});
    }
    const auto spec = resolve(a.model);
    const auto series = synthetic_gdp(spec.model, {a.x0, a.v0}, a.first_year, a.rows, a.base_gdp, shocks);
    const auto dir = prepare(a.common);
    auto out = open_out(dir, a.name);
    write_series(out, series);
    std::cout << "wrote " << series.rows.size() << " rows to " << (dir / a.name).string() << '\n';
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{std::string("Optimal-DI business-cycle model toolkit.\n") + kUnits};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto *c_sim = app.add_subcommand("simulate", "Integrate the equation of motion from one initial state");
    add_common(c_sim, sim.common);
    add_model(c_sim, sim.model);
    c_sim->add_option("--x0", sim.x0, "Initial Delta G (10^3 dollars) or 'min' for the potential minimum");
    c_sim->add_option("--v0", sim.v0, "Initial velocity (10^3 dollars/year)");
    c_sim->add_option("--energy", sim.energy, "Start at the upper turning point of this energy (10^6 units)");
    c_sim->add_option("--well", sim.well, "Well for double-well energies")->check(CLI::IsMember({"left", "right"}));
    c_sim->add_option("--t-end", sim.t_end, "Simulated years (default: max(60, 4 periods))");
    c_sim->add_option("--dt", sim.dt, "Step size in years (<= 0.05)");
    c_sim->add_option("--stride", sim.stride, "Write every n-th sample");

    PeriodCurveArgs pc;
    auto *c_pc = app.add_subcommand("period-curve", "Sample the period-energy relation");
    add_common(c_pc, pc.common);
    c_pc->add_option("--case", pc.cases, "Preset case(s); default all three")
        ->check(CLI::IsMember({"i", "ii", "iii", "case_i", "case_ii", "case_iii"}));
    c_pc->add_option("--params", pc.params_files, "Parameter file(s) instead of presets");
    c_pc->add_option("--e-min", pc.e_min, "Lowest energy (10^6 units)");
    c_pc->add_option("--e-max", pc.e_max, "Highest energy (10^6 units)");
    c_pc->add_option("-n,--samples", pc.n, "Number of energies");
    c_pc->add_flag("--log", pc.log, "Logarithmic energy spacing");

    EnergyIndexArgs ei;
    auto *c_ei = app.add_subcommand("energy-index", "Per-year energy and implied period from a GDP series");
    add_common(c_ei, ei.common);
    c_ei->add_option("--data", ei.data, "CSV with header year,gdp (dollars per capita)")->required();
    c_ei->add_option("--velocity", ei.velocity, "Velocity estimator")
        ->check(CLI::IsMember({"shooting", "central", "forward"}));
    c_ei->add_option("--peak-factor", ei.peak_factor, "Peaks must exceed this multiple of the median excitation");

    MapArgs mp;
    auto *c_map = app.add_subcommand("map", "Iterate the discrete map and classify its regime");
    add_common(c_map, mp.common);
    add_model(c_map, mp.model);
    c_map->add_option("--a", mp.a, "Relaxation rate a > 0");
    c_map->add_option("--dg0", mp.dg0, "Delta G(i) (10^3 dollars)");
    c_map->add_option("--dg-prev0", mp.dg_prev0, "Delta G(i-1) (10^3 dollars)");
    c_map->add_option("--di0", mp.di0, "DI(i); default is the value consistent with the linear relation");
    c_map->add_option("--steps", mp.steps, "Orbit steps written to orbit.csv");
    c_map->add_option("--horizon", mp.horizon, "Classification horizon in steps (>= 100)");

    FitArgs ft;
    auto *c_fit = app.add_subcommand("fit", "Fit the linear map or the ODI function to paired data");
    add_common(c_fit, ft.common);
    c_fit->add_option("--data", ft.data, "CSV with header year,dg,di (dg in 10^3 dollars)")->required();
    c_fit->add_option("--mode", ft.mode, "What to fit")->check(CLI::IsMember({"linear", "odi"}));
    c_fit->add_option("--form", ft.form, "Linear relation form")->check(CLI::IsMember({"averaged", "plain"}));
    c_fit->add_option("--init-case", ft.init_case, "Preset used as ODI starting point (default: data heuristic)")
        ->check(CLI::IsMember({"i", "ii", "iii"}));
    c_fit->add_option("--seed", ft.seed, "Multi-start seed (overrides CYCLEKIT_SEED)");
    c_fit->add_option("--starts", ft.starts, "Number of multi-starts");

    PhaseSpaceArgs ps;
    auto *c_ps = app.add_subcommand("phase-space", "One closed (x, DI) loop per energy");
    add_common(c_ps, ps.common);
    add_model(c_ps, ps.model);
    c_ps->add_option("--energy", ps.energies, "Energies (10^6 units)");
    c_ps->add_option("--dt", ps.dt, "Step size in years (<= 0.05)");

    SynthArgs sy;
    auto *c_sy = app.add_subcommand("synth", "Write a GDP series sampled yearly from an exact model trajectory");
    add_common(c_sy, sy.common);
    add_model(c_sy, sy.model);
    c_sy->add_option("--x0", sy.x0, "Delta G of the first difference year (10^3 dollars)");
    c_sy->add_option("--v0", sy.v0, "Velocity at that year (10^3 dollars/year)");
    c_sy->add_option("--first-year", sy.first_year, "Year of the first GDP row");
    c_sy->add_option("--rows", sy.rows, "Number of GDP rows");
    c_sy->add_option("--base-gdp", sy.base_gdp, "GDP of the first row (dollars)");
    c_sy->add_option("--shock", sy.shocks, "YEAR:DELTA, add DELTA (10^3 dollars) to that year's Delta G");
    c_sy->add_option("--name", sy.name, "Output file name inside --out-dir");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*c_sim) return run_simulate(sim);
        if (*c_pc) return run_period_curve(pc);
        if (*c_ei) return run_energy_index(ei);
        if (*c_map) return run_map(mp);
        if (*c_fit) return run_fit(ft);
        if (*c_ps) return run_phase_space(ps);
        if (*c_sy) return run_synth(sy);
    } catch (const ValidationError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const NumericalError &e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
