#include "floydlab/cli/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <ostream>
#include <random>

#include "floydlab/correspondence.hpp"
#include "floydlab/dynamics.hpp"
#include "floydlab/errors.hpp"
#include "floydlab/qshje.hpp"
#include "floydlab/squarewell.hpp"

namespace floydlab::cli {
namespace {

constexpr const char* kVersion = "1.0.0";
constexpr double kResidualTol = 1e-8;
constexpr double kResidualTolAiry = 1e-6;
constexpr double kIdentityTol = 1e-8;
constexpr double kJacobiTol = 1e-6;
constexpr double kTimingTol = 1e-12;
constexpr double kLevelTol = 1e-10;

using Json = nlohmann::ordered_json;

bool is_free(const Potential& p) { return std::holds_alternative<FreePotential>(p); }
bool is_well(const Potential& p) { return std::holds_alternative<SquareWellPotential>(p); }
bool is_linear(const Potential& p) { return std::holds_alternative<LinearPotential>(p); }

double rel(double value, double reference, double floor = 0.0) {
    return std::fabs(value - reference) / std::max(std::fabs(reference), floor);
}

std::string hex(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::vector<double> linspace(const GridSpec& g) {
    std::vector<double> xs(g.n);
    for (std::size_t i = 0; i < g.n; ++i) {
        xs[i] = g.n == 1 ? g.min
                         : g.min + (g.max - g.min) * static_cast<double>(i) /
                                       static_cast<double>(g.n - 1);
    }
    return xs;
}

// Uniform draw in [lo, hi) from the top 53 bits, independent of the library's distributions.
double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Microstate random_microstate(std::mt19937_64& rng) {
    const double a = std::exp(uniform(rng, -1.0, 1.0));
    const double b = std::exp(uniform(rng, -1.0, 1.0));
    const double c = uniform(rng, -0.95, 0.95) * 2.0 * std::sqrt(a * b);
    return make_microstate(a, b, c);
}

// Level-resolved context and the level itself (square well only).
struct Setting {
    PhysicalContext ctx;
    Microstate ms;
    std::optional<WellLevel> level;
    std::optional<WellSpectrum> spectrum;
};

Setting resolve(const Scenario& s) {
    PhysicalContext ctx = s.ctx;
    std::optional<WellLevel> level;
    std::optional<WellSpectrum> spectrum;
    if (const auto* well = std::get_if<SquareWellPotential>(&s.potential)) {
        spectrum = solve_symmetric_levels(ctx, well->U, well->q);
        if (static_cast<std::size_t>(s.level) >= spectrum->levels.size()) {
            throw ConfigError("context.level: level " + std::to_string(s.level) +
                              " does not exist; the well holds " +
                              std::to_string(spectrum->levels.size()) + " symmetric levels");
        }
        level = spectrum->levels[static_cast<std::size_t>(s.level)];
        ctx = on_shell(ctx, *level);
    }
    return {ctx, resolve_microstate(s, ctx), level, spectrum};
}

// Natural x-range when the scenario gives no grid.
GridSpec default_range(const Scenario& s, const BasisPair& basis, std::size_t n) {
    if (s.grid) return {s.grid->min, s.grid->max, n};
    if (const auto* well = std::get_if<SquareWellPotential>(&s.potential)) {
        const double reach = well->q + 3.0 / basis.kappa();
        return {-reach, reach, n};
    }
    if (const auto* lin = std::get_if<LinearPotential>(&s.potential)) {
        const double turn = s.ctx.E / lin->f;
        return {turn - 12.0 / basis.airy_scale(), turn + 2.0 / basis.airy_scale(), n};
    }
    const double wavelength = 2.0 * std::numbers::pi / basis.k();
    return {-2.0 * wavelength, 2.0 * wavelength, n};
}

double residual_tolerance(const Potential& p) {
    return is_linear(p) ? kResidualTolAiry : kResidualTol;
}

double time_at(const Setting& st, const Scenario& s, const BasisFamily* family, double x) {
    if (const auto* well = std::get_if<SquareWellPotential>(&s.potential)) {
        return square_well_time(st.ctx, well->U, well->q, st.ms, x);
    }
    return trajectory_time(*family, st.ctx, x);
}

double closed_time(const Setting& st, const Scenario& s, double x) {
    if (const auto* lin = std::get_if<LinearPotential>(&s.potential)) {
        return -trajectory_time_linear_closed(st.ctx, st.ms, lin->f, x);
    }
    return trajectory_time_free_closed(st.ctx, st.ms, x);
}

void add_meta(Report& r, Verb verb, const Scenario& s, const Setting& st, const RunOptions& o) {
    r.meta["tool"] = "floydlab";
    r.meta["version"] = kVersion;
    r.meta["verb"] = verb_name(verb);
    r.meta["scenario"] = s.name;
    r.meta["scenario_hash"] = hex(scenario_hash(s));
    r.meta["potential"] = potential_name(s.potential);
    r.meta["context"] = Json{{"m", st.ctx.m}, {"hbar", st.ctx.hbar}, {"E", st.ctx.E}};
    r.meta["microstate"] = Json{{"a", st.ms.a()}, {"b", st.ms.b()}, {"c", st.ms.c()}};
    r.meta["tolerances"] = Json{{"scale", o.tol_scale},
                                {"residual", residual_tolerance(s.potential) * o.tol_scale},
                                {"identity", kIdentityTol * o.tol_scale},
                                {"jacobi", kJacobiTol * o.tol_scale},
                                {"timing", kTimingTol * o.tol_scale}};
    r.meta["rng"] = Json{{"generator", "mt19937_64"}, {"seed", o.seed}};
}

void add_trajectory(Report& r, const Scenario& s, const Setting& st, const RunOptions& o) {
    const BasisPair basis = make_basis(st.ctx, st.ms, s.potential);
    std::optional<BasisFamily> family;
    if (!is_well(s.potential)) family = basis_family(st.ctx, st.ms, s.potential);

    Table t{{"x", "W", "W_x", "schwarzian", "residual", "t_minus_t0"}, {}};
    double worst_residual = 0.0, worst_jacobi = 0.0, largest_time = 0.0;
    for (double x : linspace(*s.grid)) {
        const QshjePoint p = qshje_point(basis, x, 0.0);
        const double time = time_at(st, s, family ? &*family : nullptr, x);
        t.rows.push_back({x, p.W, p.Wx, p.schwarzian, p.residual, time});
        worst_residual = std::max(worst_residual, std::fabs(p.residual) / residual_scale(basis, x));
        if (!is_well(s.potential)) {
            const double closed = closed_time(st, s, x);
            worst_jacobi = std::max(worst_jacobi, std::fabs(time - closed));
            largest_time = std::max(largest_time, std::fabs(closed));
        }
    }
    r.tables.emplace_back("trajectory", std::move(t));
    r.check("qshje_residual", worst_residual, residual_tolerance(s.potential) * o.tol_scale);
    if (!is_well(s.potential) && largest_time > 0.0) {
        r.check("jacobi_time_vs_closed_form", worst_jacobi / largest_time, kJacobiTol * o.tol_scale);
    }
}

void add_free_stats(Report& r, const Setting& st, const RunOptions& o) {
    const BasisPair basis = basis_free(st.ctx, st.ms);
    const CycleStats q = cycle_stats(basis);
    const CycleStats c = cycle_stats_closed(st.ctx, st.ms);
    const Envelope env = indeterminacy_envelope(basis);
    const double p2 = 2.0 * st.ctx.m * st.ctx.E;
    const double floor_p2 = 1e-6 * p2, floor_e = 1e-6 * st.ctx.E;

    Table t;
    t.columns = {"mean_Wx", "mean_Wx2", "variance", "mean_quantum_potential", "mean_qp_balance",
                 "envelope_amplitude", "phase_shift", "Wx_min", "Wx_max"};
    t.rows.push_back({q.mean_Wx, q.mean_Wx2, q.variance, q.mean_quantum_potential,
                      q.mean_qp_balance, q.envelope_amplitude, q.phase_shift, env.Wx_min,
                      env.Wx_max});
    r.tables.emplace_back("stats", std::move(t));
    r.data["closed_form"] = Json{{"mean_Wx", c.mean_Wx},
                                 {"mean_Wx2", c.mean_Wx2},
                                 {"variance", c.variance},
                                 {"mean_quantum_potential", c.mean_quantum_potential}};

    const double tol = kIdentityTol * o.tol_scale;
    r.check("mean_Wx_closed_form", rel(q.mean_Wx, c.mean_Wx), tol);
    r.check("mean_Wx2_closed_form", rel(q.mean_Wx2, c.mean_Wx2), tol);
    r.check("variance_closed_form", rel(q.variance, c.variance, floor_p2), tol);
    r.check("quantum_potential_closed_form",
            rel(q.mean_quantum_potential, c.mean_quantum_potential, floor_e), tol);
    r.check("quantum_potential_is_minus_variance_over_2m",
            rel(q.mean_quantum_potential, -q.variance / (2.0 * st.ctx.m), floor_e), tol);
    r.check("quantum_potential_balance",
            rel(q.mean_quantum_potential, q.mean_qp_balance, floor_e), tol);
    r.check_flag("mean_Wx2_at_least_2mE", q.mean_Wx2 >= p2 * (1.0 - tol));
}

void add_well_timing(Report& r, const Scenario& s, const Setting& st, const RunOptions& o) {
    const auto& well = std::get<SquareWellPotential>(s.potential);
    const WellLevel& level = *st.level;
    const TimingReport t = timing_report(st.ctx, level, st.ms, well.q);
    r.data["level"] = Json{{"n", level.n}, {"E", level.E}, {"k", level.k}, {"kappa", level.kappa}};
    r.data["timing"] = Json{{"t_plus_R", t.t_plus_R},
                            {"t_minus_R", t.t_minus_R},
                            {"t_libration", t.t_libration},
                            {"fraction_forbidden", t.fraction_forbidden}};

    const double ratio = (t.t_plus_R + t.t_minus_R) / t.t_libration;
    r.check("timing_ratio_identity", rel(ratio, 1.0 / (level.kappa * well.q + 1.0)),
            kTimingTol * o.tol_scale);
    r.check("level_residual", std::fabs(level_residual(level, well.q)) / level.k,
            kLevelTol * o.tol_scale);
    double worst = 0.0;
    for (int side : {1, -1}) {
        worst = std::max(worst, rel(dwell_time_jacobi(st.ctx, well.U, st.ms, side),
                                    dwell_time(st.ctx, level, st.ms, side)));
    }
    r.check("dwell_time_jacobi", worst, kJacobiTol * o.tol_scale);
}

void add_levels(Report& r, const Scenario& s, const Setting& st) {
    const auto& well = std::get<SquareWellPotential>(s.potential);
    Table t{{"n", "E", "k", "kappa", "residual", "fraction_forbidden"}, {}};
    for (const WellLevel& l : st.spectrum->levels) {
        t.rows.push_back({static_cast<double>(l.n), l.E, l.k, l.kappa,
                          level_residual(l, well.q),
                          fractional_forbidden_time(on_shell(st.ctx, l), l, well.q)});
    }
    r.tables.emplace_back("levels", std::move(t));
}

void add_sweep(Report& r, const Scenario& s, const Setting& st, const RunOptions& o) {
    if (!s.sweep) throw ConfigError("sweep.axis: the scenario has no sweep section");
    const SweepSpec& w = *s.sweep;
    SweepScenario sc;
    sc.potential = s.potential;
    sc.ctx = s.ctx;
    if (!is_well(s.potential)) sc.ctx.E = st.ctx.E;
    sc.ms = st.ms;
    sc.level = s.level;
    const SweepResult res =
        limit_sweep(w.axis, geometric_grid(w.axis, w.min, w.max, w.n), sc, o.threads);

    const std::string axis = w.axis == SweepAxis::Energy ? "E" : "hbar";
    Table t;
    if (is_well(s.potential)) {
        t.columns = {axis, "E", "fraction_forbidden", "t_plus_R", "t_minus_R", "t_libration"};
        for (const SweepPoint& p : res.points) {
            t.rows.push_back({p.value, p.E, p.fraction_forbidden, p.t_plus_R, p.t_minus_R,
                              p.t_libration});
        }
        r.check_flag("fraction_forbidden_decreasing", res.diagnostics.fraction_decreasing);
    } else {
        t.columns = {axis,           "mean_Wx_ratio", "variance_ratio", "qp_ratio",
                     "Wx_min_ratio", "Wx_max_ratio",  "time_deviation"};
        for (const SweepPoint& p : res.points) {
            t.rows.push_back({p.value, p.mean_Wx_ratio, p.variance_ratio, p.qp_ratio,
                              p.Wx_min_ratio, p.Wx_max_ratio, p.time_deviation});
        }
        const double tol = kIdentityTol * o.tol_scale;
        r.check("mean_Wx_ratio_is_one", res.diagnostics.mean_Wx_max_dev, tol);
        r.check("variance_ratio_plateau",
                res.diagnostics.variance_ratio_spread /
                    std::max(1.0, std::fabs(res.diagnostics.variance_ratio_level)),
                tol);
    }
    r.data["sweep"] = Json{{"axis", axis},
                           {"points", res.points.size()},
                           {"variance_ratio_level", res.diagnostics.variance_ratio_level},
                           {"fraction_last", res.diagnostics.fraction_last}};
    r.tables.emplace_back("sweep", std::move(t));
}

void add_identity_suite(Report& r, const Scenario& s, const Setting& st, const RunOptions& o) {
    std::mt19937_64 rng(o.seed);
    const std::size_t draws = s.check_microstates;
    const std::size_t points = s.check_points;
    double residual = 0.0, stats = 0.0, qp = 0.0, timing = 0.0, jacobi = 0.0;
    bool second_moment = true;
    for (std::size_t i = 0; i < draws; ++i) {
        const Microstate ms = i == 0 ? st.ms : random_microstate(rng);
        const BasisPair basis = make_basis(st.ctx, ms, s.potential);
        const GridSpec range = default_range(s, basis, points);
        for (std::size_t j = 0; j < points; ++j) {
            const double x = uniform(rng, range.min, range.max);
            residual = std::max(residual, std::fabs(qshje_residual(basis, x)) / residual_scale(basis, x));
        }
        if (is_free(s.potential)) {
            const CycleStats q = cycle_stats(basis);
            const CycleStats c = cycle_stats_closed(st.ctx, ms);
            const double p2 = 2.0 * st.ctx.m * st.ctx.E;
            stats = std::max({stats, rel(q.mean_Wx, c.mean_Wx), rel(q.mean_Wx2, c.mean_Wx2),
                              rel(q.variance, c.variance, 1e-6 * p2)});
            qp = std::max(qp, rel(q.mean_quantum_potential, -q.variance / (2.0 * st.ctx.m),
                                  1e-6 * st.ctx.E));
            second_moment = second_moment && q.mean_Wx2 >= p2 * (1.0 - 1e-12);
        }
        if (const auto* well = std::get_if<SquareWellPotential>(&s.potential)) {
            const TimingReport t = timing_report(st.ctx, *st.level, ms, well->q);
            timing = std::max(timing, rel((t.t_plus_R + t.t_minus_R) / t.t_libration,
                                          1.0 / (st.level->kappa * well->q + 1.0)));
        }
        if (const auto* lin = std::get_if<LinearPotential>(&s.potential)) {
            const BasisFamily family = basis_family(st.ctx, ms, s.potential);
            for (int j = 0; j < 5; ++j) {
                const double x = uniform(rng, range.min, range.max);
                const double closed = trajectory_time_linear_closed(st.ctx, ms, lin->f, x);
                jacobi = std::max(jacobi, rel(-trajectory_time(family, st.ctx, x), closed));
            }
        }
    }
    r.data["draws"] = Json{{"microstates", draws}, {"points_per_microstate", points}};
    r.check("qshje_residual", residual, residual_tolerance(s.potential) * o.tol_scale);
    if (is_free(s.potential)) {
        r.check("cycle_stats_closed_form", stats, kIdentityTol * o.tol_scale);
        r.check("quantum_potential_is_minus_variance_over_2m", qp, kIdentityTol * o.tol_scale);
        r.check_flag("mean_Wx2_at_least_2mE", second_moment);
    }
    if (is_well(s.potential)) r.check("timing_ratio_identity", timing, kTimingTol * o.tol_scale);
    if (is_linear(s.potential)) r.check("jacobi_time_vs_closed_form", jacobi, kJacobiTol * o.tol_scale);
}

}  // namespace

Verb parse_verb(const std::string& name) {
    if (name == "run") return Verb::Run;
    if (name == "check") return Verb::Check;
    if (name == "sweep") return Verb::Sweep;
    if (name == "levels") return Verb::Levels;
    throw ConfigError("unknown verb '" + name + "'");
}

std::string verb_name(Verb verb) {
    switch (verb) {
        case Verb::Run: return "run";
        case Verb::Check: return "check";
        case Verb::Sweep: return "sweep";
        case Verb::Levels: return "levels";
    }
    return "run";
}

Report build_report(Verb verb, const Scenario& scenario, const RunOptions& options) {
    if (!(options.tol_scale > 0.0)) throw ConfigError("--tol-scale must be positive");
    const Setting st = resolve(scenario);
    Report r;
    r.name = verb == Verb::Run ? scenario.name : scenario.name + "_" + verb_name(verb);
    add_meta(r, verb, scenario, st, options);

    switch (verb) {
        case Verb::Run:
            if (scenario.grid) add_trajectory(r, scenario, st, options);
            if (is_free(scenario.potential)) add_free_stats(r, st, options);
            if (is_well(scenario.potential)) {
                add_well_timing(r, scenario, st, options);
                add_levels(r, scenario, st);
            }
            if (const auto* lin = std::get_if<LinearPotential>(&scenario.potential)) {
                const TransitionWidth w = transition_width(st.ctx, lin->f, 1e-2);
                r.data["transition_width"] = Json{{"tol_rel", 1e-2},
                                                  {"zeta_width", w.zeta_width},
                                                  {"x_width", w.x_width}};
            }
            if (scenario.sweep) add_sweep(r, scenario, st, options);
            break;
        case Verb::Check:
            add_identity_suite(r, scenario, st, options);
            break;
        case Verb::Sweep:
            add_sweep(r, scenario, st, options);
            break;
        case Verb::Levels:
            if (!is_well(scenario.potential)) {
                throw ConfigError("potential.kind: levels needs a square_well scenario");
            }
            add_levels(r, scenario, st);
            break;
    }
    return r;
}

int execute(Verb verb, const std::string& config_path, RunOptions options, std::ostream& out,
            std::ostream& err) {
    if (const char* env = std::getenv("FLOYDLAB_OUT"); env != nullptr && *env != '\0') {
        options.out_dir = env;
    }
    try {
        const Scenario scenario = load_scenario(config_path);
        const Report report = build_report(verb, scenario, options);
        for (const std::string& path : emit_report(report, options.format, options.out_dir)) {
            out << "wrote " << path << '\n';
        }
        int failed = 0;
        for (const Check& c : report.checks) {
            char line[256];
            std::snprintf(line, sizeof line, "%s %-45s %.3e (tol %.1e)\n", c.pass ? "ok  " : "FAIL",
                          c.name.c_str(), c.value, c.tolerance);
            out << line;
            failed += c.pass ? 0 : 1;
        }
        if (failed > 0) {
            err << failed << " check(s) failed\n";
            return 1;
        }
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace floydlab::cli
