#include "floydlab/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "floydlab/errors.hpp"
#include "floydlab/qshje.hpp"
#include "floydlab/specfun.hpp"

namespace floydlab {

BasisFamily basis_family(const PhysicalContext& ctx, const Microstate& ms,
                         const Potential& potential) {
    if (std::holds_alternative<SquareWellPotential>(potential)) {
        throw DomainError("square-well basis exists only on shell; no energy family");
    }
    return [ctx, ms, potential](double E) {
        PhysicalContext shifted = ctx;
        shifted.E = E;
        return make_basis(shifted, ms, potential);
    };
}

double trajectory_time(const BasisFamily& family, const PhysicalContext& ctx, double x) {
    const double reference = action_phase(family(ctx.E), x);
    auto phase = [&](double E) {
        const double p = action_phase(family(E), x);
        return reference + std::remainder(p - reference, 2.0 * std::numbers::pi);
    };
    const double h = 1e-5 * std::fabs(ctx.E);
    const DerivativeEstimate d = numeric_derivative(phase, ctx.E, 1, h);
    if (!std::isfinite(d.value)) {
        throw UnwrapError("trajectory_time: phase derivative not finite at x = " + std::to_string(x));
    }
    return ctx.hbar * d.value;
}

double trajectory_time_free_closed(const PhysicalContext& ctx, const Microstate& ms, double x) {
    const BasisPair basis = basis_free(ctx, ms);
    return x * conjugate_momentum(basis, x) / (2.0 * ctx.E);
}

double trajectory_time_linear_closed(const PhysicalContext& ctx, const Microstate& ms, double f,
                                     double x) {
    validate(ctx);
    validate(Potential{LinearPotential{f}});
    const double zeta = std::cbrt(2.0 * ctx.m * f) * (x - ctx.E / f) / std::cbrt(ctx.hbar * ctx.hbar);
    const AiryValues v = airy_eval(zeta);
    const double form = ms.a() * v.ai * v.ai + ms.b() * v.bi * v.bi + ms.c() * v.ai * v.bi;
    if (!std::isfinite(form)) {
        throw OverflowError("trajectory_time_linear_closed: Bi^2 overflows at x = " +
                            std::to_string(x));
    }
    return std::cbrt(ctx.hbar) / std::numbers::pi * std::sqrt(ms.determinant()) *
           std::cbrt(2.0 * ctx.m / (f * f)) / form;
}

Trajectory make_trajectory(const PhysicalContext& ctx, const Microstate& ms,
                           const Potential& potential, const std::vector<double>& xs) {
    const BasisFamily family = basis_family(ctx, ms, potential);
    Trajectory traj{{}, ms, ctx, potential};
    traj.samples.reserve(xs.size());
    for (double x : xs) traj.samples.push_back({x, trajectory_time(family, ctx, x)});
    return traj;
}

double principal_function(const BasisPair& basis, double x, double x_ref, double t_minus_t0) {
    return reduced_action(basis, x, x_ref) - basis.context().E * t_minus_t0;
}

CycleAveragedMotion cycle_averaged_motion_free(const PhysicalContext& ctx, const Microstate& ms,
                                               double x) {
    const BasisPair basis = basis_free(ctx, ms);
    const double p = std::sqrt(2.0 * ctx.m * ctx.E);
    const double period = std::numbers::pi / basis.k();
    const double start = x - 0.5 * period;

    const double mean_wx = cycle_average([&](double y) { return conjugate_momentum(basis, y); },
                                         period, 1, {}, start);
    // W(y) - W(0) - p y is periodic in y, so the trapezoid rule stays spectral.
    const double w_start = reduced_action(basis, start, 0.0);
    const double mean_periodic = cycle_average(
        [&](double y) { return w_start + reduced_action(basis, y, start) - p * y; }, period, 1, {},
        start);

    CycleAveragedMotion out;
    out.mean_time = x * mean_wx / (2.0 * ctx.E);
    out.mean_action = mean_periodic + p * x;
    out.mean_principal = out.mean_action - ctx.E * out.mean_time;
    out.action_offset = out.mean_action - 2.0 * ctx.E * out.mean_time;
    return out;
}

TransitionWidth transition_width(const PhysicalContext& ctx, double f, double tol_rel) {
    validate(ctx);
    validate(Potential{LinearPotential{f}});
    if (!(tol_rel > 0.0) || !(tol_rel < 0.5)) {
        throw DomainError("transition_width: tol_rel must lie in (0, 0.5)");
    }
    const Microstate classical = make_microstate(1.0, 1.0, 0.0);
    const Potential potential = LinearPotential{f};
    const double x_turn = ctx.E / f;
    const double length = std::cbrt(ctx.hbar * ctx.hbar / (2.0 * ctx.m * f));

    auto deviation = [&](double zeta) {
        const double x = x_turn + zeta * length;
        const double quantum = trajectory_time_linear_closed(ctx, classical, f, x);
        const double reference = classical_reference(ctx, potential, x).t_minus_t0;
        return std::fabs(quantum - reference) / reference;
    };

    // The deviation falls off like |zeta|^{-3}; start far enough out that it is below tol.
    const double zeta_start = -std::min(190.0, std::max(20.0, 3.0 / std::cbrt(tol_rel)));
    if (deviation(zeta_start) > tol_rel) {
        throw DomainError("transition_width: tol_rel too small for the Airy range");
    }
    // March towards the turning point and refine the first crossing.
    constexpr double kStep = 0.05;
    double outside = zeta_start;
    double inside = zeta_start;
    for (double zeta = zeta_start + kStep; zeta < 0.0; zeta += kStep) {
        if (deviation(zeta) > tol_rel) {
            inside = zeta;
            break;
        }
        outside = zeta;
    }
    if (inside == zeta_start) inside = -1e-12;
    const double zeta_left =
        find_root([&](double zeta) { return deviation(zeta) - tol_rel; }, outside, inside, 1e-13);

    TransitionWidth w;
    w.zeta_left = zeta_left;
    w.zeta_width = -zeta_left;
    w.x_width = w.zeta_width * length;
    return w;
}

}  // namespace floydlab
