#include "floydlab/squarewell.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "floydlab/errors.hpp"
#include "floydlab/specfun.hpp"

namespace floydlab {
namespace {

constexpr double kPi = std::numbers::pi;

void check_well(double U, double q) {
    if (!(U > 0.0) || !(q > 0.0) || !std::isfinite(U) || !std::isfinite(q)) {
        throw DomainError("square well requires U > 0 and q > 0");
    }
}

void check_side(int side) {
    if (side != 1 && side != -1) throw DomainError("side must be +1 or -1");
}

double wavenumber(const PhysicalContext& ctx, double energy) {
    return std::sqrt(2.0 * ctx.m * energy) / ctx.hbar;
}

// Returns kappa / k for 0 < E < U.
double decay_ratio(const PhysicalContext& ctx, double U) {
    if (!(ctx.E > 0.0) || !(ctx.E < U)) throw DomainError("square well requires 0 < E < U");
    return std::sqrt((U - ctx.E) / ctx.E);
}

void check_level(const WellLevel& level) {
    if (!(level.k > 0.0) || !(level.kappa > 0.0)) {
        throw DomainError("level needs k > 0 and kappa > 0");
    }
}

// Exterior pair beyond the wall, continued off shell; y >= 0 is the distance
// from the wall and the Wronskian is k.
struct ExteriorPair {
    double u, v;
};

ExteriorPair exterior_pair(double rho, double kappa, double y) {
    const double norm = std::sqrt(1.0 + rho * rho);
    const double reflect = (1.0 - rho * rho) / (1.0 + rho * rho);
    const double decay = std::exp(-kappa * y);
    return {decay / norm, (std::exp(kappa * y) - reflect * decay) * norm / (2.0 * rho)};
}

// Phase advance of the arctan form from the wall out to distance y.
double exterior_phase_advance(const PhysicalContext& ctx, double U, const Microstate& ms,
                              int side, double y) {
    const double rho = decay_ratio(ctx, U);
    const double kappa = std::sqrt(2.0 * ctx.m * (U - ctx.E)) / ctx.hbar;
    const double root_det = std::sqrt(ms.determinant());
    const double c = side * ms.c();
    auto direction = [&](const ExteriorPair& p) {
        return std::array<double, 2>{root_det * p.u, ms.b() * p.v + 0.5 * c * p.u};
    };
    const auto d0 = direction(exterior_pair(rho, kappa, 0.0));
    const auto d1 = direction(exterior_pair(rho, kappa, y));
    return std::atan2(d0[0] * d1[1] - d0[1] * d1[0], d0[0] * d1[0] + d0[1] * d1[1]);
}

}  // namespace

WellSpectrum solve_symmetric_levels(const PhysicalContext& ctx, double U, double q,
                                    std::optional<std::size_t> max_levels) {
    validate(ctx);
    check_well(U, q);
    const double k0 = wavenumber(ctx, U);
    WellSpectrum spectrum{U, q, {}};
    for (int n = 0; n * kPi < k0 * q; ++n) {
        if (max_levels && spectrum.levels.size() >= *max_levels) break;
        auto mismatch = [&](double k) {
            const double kappa = std::sqrt(std::max(0.0, k0 * k0 - k * k));
            return k * std::sin(k * q) - kappa * std::cos(k * q);
        };
        const double lo = n * kPi / q;
        const double hi = std::min((n * kPi + 0.5 * kPi) / q, k0);
        if (!(hi > lo)) break;
        const double k = find_root(mismatch, lo, hi, 4.0 * std::numeric_limits<double>::epsilon() * hi);
        const double kappa = std::sqrt(std::max(0.0, k0 * k0 - k * k));
        if (!(kappa > 0.0)) continue;  // level sits exactly at the threshold
        const double E = ctx.hbar * ctx.hbar * k * k / (2.0 * ctx.m);
        spectrum.levels.push_back({n, E, k, kappa});
    }
    if (spectrum.levels.empty()) {
        throw NoLevelError("no symmetric bound state for U = " + std::to_string(U) +
                           ", q = " + std::to_string(q));
    }
    return spectrum;
}

double level_residual(const WellLevel& level, double q) {
    return level.k * std::sin(level.k * q) - level.kappa * std::cos(level.k * q);
}

double half_width_for_level(const PhysicalContext& ctx, double U, double E, int n) {
    validate(ctx);
    if (!(E > 0.0) || !(E < U)) throw DomainError("half_width_for_level requires 0 < E < U");
    if (n < 0) throw DomainError("level index must be non-negative");
    const double k = wavenumber(ctx, E);
    const double kappa = wavenumber(ctx, U - E);
    return (std::atan(kappa / k) + n * kPi) / k;
}

PhysicalContext on_shell(const PhysicalContext& ctx, const WellLevel& level) {
    PhysicalContext out = ctx;
    out.E = level.E;
    return out;
}

double dwell_time(const PhysicalContext& ctx, const WellLevel& level, const Microstate& ms,
                  int side) {
    validate(ctx);
    check_side(side);
    check_level(level);
    const double rho = level.kappa / level.k;
    const double denom = ms.a() + side * ms.c() * rho + ms.b() * rho * rho;
    if (!(denom > 0.0)) throw DomainError("dwell_time: quadratic form not positive");
    return 2.0 * std::sqrt(ms.determinant()) * (1.0 + rho * rho) / denom * ctx.m /
           (ctx.hbar * level.kappa * level.k);
}

double libration_period(const PhysicalContext& ctx, const WellLevel& level, const Microstate& ms,
                        double q) {
    validate(ctx);
    check_level(level);
    if (!(q > 0.0)) throw DomainError("libration_period requires q > 0");
    const double a = ms.a(), b = ms.b(), c = ms.c();
    const double r2 = (level.kappa / level.k) * (level.kappa / level.k);
    const double denom = a * a + (2.0 * a * b - c * c) * r2 + b * b * r2 * r2;
    if (!(denom > 0.0)) throw DomainError("libration_period: quadratic form not positive");
    return 4.0 * std::sqrt(ms.determinant()) * (1.0 + r2) * (a + b * r2) / denom * ctx.m *
           (q + 1.0 / level.kappa) / (ctx.hbar * level.k);
}

double fractional_forbidden_time(const PhysicalContext& ctx, const WellLevel& level, double q) {
    validate(ctx);
    check_level(level);
    const double p_out = ctx.hbar * level.kappa;
    return ctx.hbar / (ctx.hbar + p_out * q);
}

TimingReport timing_report(const PhysicalContext& ctx, const WellLevel& level,
                           const Microstate& ms, double q) {
    TimingReport r;
    r.t_plus_R = dwell_time(ctx, level, ms, 1);
    r.t_minus_R = dwell_time(ctx, level, ms, -1);
    r.t_libration = libration_period(ctx, level, ms, q);
    r.fraction_forbidden = fractional_forbidden_time(ctx, level, q);
    return r;
}

double exterior_action(const PhysicalContext& ctx, double U, const Microstate& ms, int side) {
    validate(ctx);
    check_side(side);
    const double rho = decay_ratio(ctx, U);
    const double slope = (ms.b() * rho + 0.5 * side * ms.c()) / std::sqrt(ms.determinant());
    return ctx.hbar * (0.5 * kPi - std::atan(slope));
}

double dwell_time_jacobi(const PhysicalContext& ctx, double U, const Microstate& ms, int side) {
    validate(ctx);
    check_side(side);
    decay_ratio(ctx, U);
    const double h = 1e-5 * std::min(ctx.E, U - ctx.E);
    auto action = [&](double E) {
        PhysicalContext shifted = ctx;
        shifted.E = E;
        return exterior_action(shifted, U, ms, side);
    };
    return 2.0 * numeric_derivative(action, ctx.E, 1, h).value;
}

double exterior_action_quadrature(const PhysicalContext& ctx, double U, const Microstate& ms,
                                  int side) {
    validate(ctx);
    check_side(side);
    const double rho = decay_ratio(ctx, U);
    const double kappa = wavenumber(ctx, U - ctx.E);
    const double norm = std::sqrt(1.0 + rho * rho);
    const double reflect = (1.0 - rho * rho) / (1.0 + rho * rho);
    const double a = ms.a(), b = ms.b(), c = side * ms.c();
    const double root_det = std::sqrt(ms.determinant());
    // (u, v) continue the exterior pair off shell with unit Wronskian up to the factor k.
    auto momentum_over_hbar = [&](double y) {
        const double decay = std::exp(-kappa * y);
        const double u = decay / norm;
        const double v = (std::exp(kappa * y) - reflect * decay) * norm / (2.0 * rho);
        return root_det * kappa / rho / (a * u * u + b * v * v + c * u * v);
    };
    const double reach = 40.0 / kappa;
    return ctx.hbar * integrate(momentum_over_hbar, 0.0, reach, 1e-13);
}

double square_well_time(const PhysicalContext& ctx, double U, double q, const Microstate& ms,
                        double x) {
    validate(ctx);
    check_well(U, q);
    decay_ratio(ctx, U);
    const double k = wavenumber(ctx, ctx.E);
    const double root_det = std::sqrt(ms.determinant());
    // Interior momentum W_x = hbar k det^{1/2} / (a cos^2 + b sin^2 + c sin cos).
    auto interior_time = [&](double at) {
        const double cs = std::cos(k * at), sn = std::sin(k * at);
        const double form = ms.a() * cs * cs + ms.b() * sn * sn + ms.c() * cs * sn;
        return at * ctx.hbar * k * root_det / form / (2.0 * ctx.E);
    };
    if (std::fabs(x) <= q) return interior_time(x);

    const int side = x > 0.0 ? 1 : -1;
    const double y = std::fabs(x) - q;
    const double h = 1e-5 * std::min(ctx.E, U - ctx.E);
    auto advance = [&](double E) {
        PhysicalContext shifted = ctx;
        shifted.E = E;
        return exterior_phase_advance(shifted, U, ms, side, y);
    };
    const double beyond = ctx.hbar * numeric_derivative(advance, ctx.E, 1, h).value;
    return interior_time(side * q) + side * beyond;
}

}  // namespace floydlab
