#include "floydlab/correspondence.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numbers>
#include <string>
#include <thread>

#include "floydlab/errors.hpp"
#include "floydlab/qshje.hpp"
#include "floydlab/specfun.hpp"
#include "floydlab/squarewell.hpp"

namespace floydlab {
namespace {

void require_free(const BasisPair& basis, const char* what) {
    if (!std::holds_alternative<FreePotential>(basis.potential())) {
        throw DomainError(std::string(what) + " is defined for the free particle only");
    }
}

Quadrature stats_quadrature() {
    Quadrature quad;
    quad.tol = 1e-13;
    return quad;
}

void check_grid(SweepAxis axis, const std::vector<double>& grid) {
    if (grid.size() < 4) {
        throw ConfigError("sweep grid needs at least 4 points, got " + std::to_string(grid.size()));
    }
    for (double v : grid) {
        if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("sweep grid values must be positive");
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const bool ordered = axis == SweepAxis::Energy ? grid[i] > grid[i - 1] : grid[i] < grid[i - 1];
        if (!ordered) {
            throw ConfigError(axis == SweepAxis::Energy
                                  ? "energy sweep grid must be strictly increasing"
                                  : "hbar sweep grid must be strictly decreasing");
        }
    }
    const auto [lo, hi] = std::minmax_element(grid.begin(), grid.end());
    if (!(*hi >= 100.0 * *lo * (1.0 - 1e-12))) {
        throw ConfigError("sweep grid must span at least 2 decades");
    }
}

SweepPoint free_point(const SweepScenario& scenario, const PhysicalContext& ctx) {
    const BasisPair basis = basis_free(ctx, scenario.ms);
    SweepPoint pt;
    pt.E = ctx.E;
    pt.hbar = ctx.hbar;
    pt.stats = cycle_stats(basis);
    const double p = std::sqrt(2.0 * ctx.m * ctx.E);
    pt.mean_Wx_ratio = pt.stats.mean_Wx / p;
    pt.variance_ratio = pt.stats.variance / (p * p);
    pt.qp_ratio = pt.stats.mean_quantum_potential / ctx.E;
    const Envelope env = indeterminacy_envelope(basis);
    pt.Wx_min_ratio = env.Wx_min / p;
    pt.Wx_max_ratio = env.Wx_max / p;
    // t - t0 = x W_x / 2E against the classical x p / 2E.
    pt.time_deviation = std::max(pt.Wx_max_ratio - 1.0, 1.0 - pt.Wx_min_ratio);
    return pt;
}

SweepPoint well_point(const SweepScenario& scenario, const PhysicalContext& ctx) {
    const auto& well = std::get<SquareWellPotential>(scenario.potential);
    if (scenario.level < 0) throw ConfigError("level index must be non-negative");
    const WellSpectrum spectrum =
        solve_symmetric_levels(ctx, well.U, well.q, static_cast<std::size_t>(scenario.level) + 1);
    if (spectrum.levels.size() <= static_cast<std::size_t>(scenario.level)) {
        throw NoLevelError("level " + std::to_string(scenario.level) + " does not exist at hbar = " +
                           std::to_string(ctx.hbar));
    }
    const WellLevel& level = spectrum.levels[static_cast<std::size_t>(scenario.level)];
    const PhysicalContext shell = on_shell(ctx, level);
    const TimingReport t = timing_report(shell, level, scenario.ms, well.q);
    SweepPoint pt;
    pt.E = level.E;
    pt.hbar = ctx.hbar;
    pt.fraction_forbidden = t.fraction_forbidden;
    pt.t_plus_R = t.t_plus_R;
    pt.t_minus_R = t.t_minus_R;
    pt.t_libration = t.t_libration;
    return pt;
}

}  // namespace

CycleStats cycle_stats(const BasisPair& basis) {
    require_free(basis, "cycle_stats");
    const PhysicalContext& ctx = basis.context();
    const Microstate& ms = basis.microstate();
    const double period = std::numbers::pi / basis.k();
    const Quadrature quad = stats_quadrature();
    auto momentum = [&](double x) { return conjugate_momentum(basis, x); };
    auto quantum_potential = [&](double x) {
        return ctx.hbar * ctx.hbar / (4.0 * ctx.m) * schwarzian(basis, x);
    };

    CycleStats s;
    s.mean_Wx = cycle_average(momentum, period, 1, quad);
    s.mean_Wx2 = cycle_average(momentum, period, 2, quad);
    s.variance = std::max(0.0, s.mean_Wx2 - s.mean_Wx * s.mean_Wx);
    s.mean_quantum_potential = cycle_average(quantum_potential, period, 1, quad);
    s.mean_qp_balance = ctx.E - s.mean_Wx2 / (2.0 * ctx.m);
    s.envelope_amplitude = std::sqrt(ms.indeterminacy_amplitude_sq());
    s.phase_shift = free_phase_shift(ms);
    return s;
}

CycleStats cycle_stats_closed(const PhysicalContext& ctx, const Microstate& ms) {
    validate(ctx);
    if (!(ctx.E > 0.0)) throw DomainError("cycle statistics require E > 0");
    const double two_m_e = 2.0 * ctx.m * ctx.E;
    const double root_det = std::sqrt(ms.determinant());
    const double trace = ms.a() + ms.b();
    CycleStats s;
    s.mean_Wx = std::sqrt(two_m_e);
    s.mean_Wx2 = ctx.m * ctx.E * trace / root_det;
    s.variance = two_m_e * (trace - 2.0 * root_det) / (2.0 * root_det);
    s.mean_quantum_potential = ctx.E * (1.0 - 0.5 * trace / root_det);
    s.mean_qp_balance = s.mean_quantum_potential;
    s.envelope_amplitude = std::sqrt(ms.indeterminacy_amplitude_sq());
    s.phase_shift = free_phase_shift(ms);
    return s;
}

Envelope indeterminacy_envelope(const BasisPair& basis) {
    require_free(basis, "indeterminacy_envelope");
    const PhysicalContext& ctx = basis.context();
    const Microstate& ms = basis.microstate();
    const double amplitude = std::sqrt(ms.indeterminacy_amplitude_sq());
    const double numer = 2.0 * std::sqrt(2.0 * ctx.m * ctx.E) * std::sqrt(ms.determinant());
    const double trace = ms.a() + ms.b();
    // (a + b) - A^{1/2} = 4 det / ((a + b) + A^{1/2}) avoids cancellation.
    const double upper = trace + amplitude;
    const double lower = 4.0 * ms.determinant() / upper;
    return {numer / upper, numer / lower, amplitude};
}

std::vector<double> geometric_grid(SweepAxis axis, double lo, double hi, std::size_t n) {
    if (!(lo > 0.0) || !(hi > lo)) throw ConfigError("sweep range needs 0 < min < max");
    if (n < 2) throw ConfigError("sweep grid needs at least 2 points");
    std::vector<double> grid(n);
    const double ratio = std::log(hi / lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) grid[i] = lo * std::exp(ratio * static_cast<double>(i));
    grid.front() = lo;
    grid.back() = hi;
    if (axis == SweepAxis::Hbar) std::reverse(grid.begin(), grid.end());
    return grid;
}

SweepResult limit_sweep(SweepAxis axis, const std::vector<double>& grid,
                        const SweepScenario& scenario, std::size_t threads) {
    check_grid(axis, grid);
    validate(scenario.potential);
    const bool well = std::holds_alternative<SquareWellPotential>(scenario.potential);
    if (std::holds_alternative<LinearPotential>(scenario.potential)) {
        throw ConfigError("limit sweeps support the free particle and the square well");
    }
    if (well && axis == SweepAxis::Energy) {
        throw ConfigError("square-well sweeps run along hbar; energies are fixed by the spectrum");
    }

    SweepResult result;
    result.axis = axis;
    result.grid = grid;
    result.points.resize(grid.size());
    std::vector<std::exception_ptr> failures(grid.size());

    auto run_one = [&](std::size_t i) {
        try {
            PhysicalContext ctx = scenario.ctx;
            (axis == SweepAxis::Energy ? ctx.E : ctx.hbar) = grid[i];
            SweepPoint pt = well ? well_point(scenario, ctx) : free_point(scenario, ctx);
            pt.value = grid[i];
            result.points[i] = pt;
        } catch (...) {
            failures[i] = std::current_exception();
        }
    };

    const std::size_t workers = std::clamp<std::size_t>(threads, 1, grid.size());
    if (workers == 1) {
        for (std::size_t i = 0; i < grid.size(); ++i) run_one(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < grid.size(); i = next++) run_one(i);
            });
        }
        for (auto& t : pool) t.join();
    }
    for (const auto& failure : failures) {
        if (failure) std::rethrow_exception(failure);
    }

    SweepDiagnostics& d = result.diagnostics;
    if (well) {
        d.fraction_decreasing = true;
        for (std::size_t i = 1; i < result.points.size(); ++i) {
            if (!(result.points[i].fraction_forbidden < result.points[i - 1].fraction_forbidden)) {
                d.fraction_decreasing = false;
            }
        }
        d.fraction_last = result.points.back().fraction_forbidden;
    } else {
        double lo = result.points.front().variance_ratio;
        double hi = lo;
        for (const SweepPoint& pt : result.points) {
            d.mean_Wx_max_dev = std::max(d.mean_Wx_max_dev, std::fabs(pt.mean_Wx_ratio - 1.0));
            lo = std::min(lo, pt.variance_ratio);
            hi = std::max(hi, pt.variance_ratio);
        }
        d.variance_ratio_spread = hi - lo;
        d.variance_ratio_level = result.points.back().variance_ratio;
    }
    return result;
}

}  // namespace floydlab
