#include "floydlab/qshje.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "floydlab/errors.hpp"

namespace floydlab {
namespace {

// Q = a phi^2 + b theta^2 + c phi theta and its x-derivatives.
struct FormDerivatives {
    double q, dq, d2q;
};

FormDerivatives form_derivatives(const BasisPair& basis, double x) {
    const BasisValues v = basis.evaluate(x);
    if (!std::isfinite(v.phi) || !std::isfinite(v.theta) || !std::isfinite(v.dphi) ||
        !std::isfinite(v.dtheta)) {
        throw EvalError("basis not evaluable at x = " + std::to_string(x));
    }
    const Microstate& ms = basis.microstate();
    const PhysicalContext& ctx = basis.context();
    const double a = ms.a(), b = ms.b(), c = ms.c();
    const double h2 = ctx.hbar * ctx.hbar;
    // u'' = g u from the Schroedinger equation.
    const double g = 2.0 * ctx.m * (basis.potential_at(x) - ctx.E) / h2;

    const double q = a * v.phi * v.phi + b * v.theta * v.theta + c * v.phi * v.theta;
    const double dq = 2.0 * a * v.phi * v.dphi + 2.0 * b * v.theta * v.dtheta +
                      c * (v.dphi * v.theta + v.phi * v.dtheta);
    const double r = a * v.dphi * v.dphi + b * v.dtheta * v.dtheta + c * v.dphi * v.dtheta;
    const double d2q = 2.0 * g * q + 2.0 * r;
    return {q, dq, d2q};
}

}  // namespace

double conjugate_momentum(const BasisPair& basis, double x) {
    const BasisValues v = basis.evaluate(x);
    const Microstate& ms = basis.microstate();
    const double q =
        ms.a() * v.phi * v.phi + ms.b() * v.theta * v.theta + ms.c() * v.phi * v.theta;
    if (!std::isfinite(q)) throw EvalError("basis not evaluable at x = " + std::to_string(x));
    return std::sqrt(2.0 * basis.context().m) / q;
}

MomentumDerivatives momentum_derivatives(const BasisPair& basis, double x) {
    const FormDerivatives f = form_derivatives(basis, x);
    const double wx = std::sqrt(2.0 * basis.context().m) / f.q;
    const double ratio = f.dq / f.q;
    return {wx, -wx * ratio, wx * (2.0 * ratio * ratio - f.d2q / f.q)};
}

double action_phase(const BasisPair& basis, double x) {
    const BasisValues v = basis.evaluate(x);
    const Microstate& ms = basis.microstate();
    return std::atan2(ms.b() * v.theta + 0.5 * ms.c() * v.phi, std::sqrt(ms.determinant()) * v.phi);
}

double reduced_action(const BasisPair& basis, double x, double x_ref) {
    if (x == x_ref) return 0.0;
    const double direction = x > x_ref ? 1.0 : -1.0;
    double pos = x_ref;
    double phase = action_phase(basis, pos);
    double total = 0.0;
    while (pos != x) {
        const double k_here = basis.max_wavenumber(pos, pos);
        const double k_step = basis.max_wavenumber(pos, pos + direction / k_here);
        double h = std::min(std::fabs(x - pos), 1.0 / k_step);
        double next = 0.0, next_phase = 0.0, delta = 0.0;
        int halvings = 0;
        for (;;) {
            next = (h >= std::fabs(x - pos)) ? x : pos + direction * h;
            next_phase = action_phase(basis, next);
            delta = std::remainder(next_phase - phase, 2.0 * std::numbers::pi);
            // The phase is monotone, so a wrapped step against the direction of
            // travel means more than half a turn was crossed.
            if (direction * delta >= -1e-12) break;
            if (++halvings > 60) {
                throw UnwrapError("reduced_action: phase not monotone near x = " +
                                  std::to_string(pos));
            }
            h *= 0.5;
        }
        total += delta;
        pos = next;
        phase = next_phase;
    }
    return basis.context().hbar * total;
}

double schwarzian(const BasisPair& basis, double x) {
    const FormDerivatives f = form_derivatives(basis, x);
    const double ratio = f.dq / f.q;
    return 0.5 * ratio * ratio - f.d2q / f.q;
}

double qshje_residual(const BasisPair& basis, double x) {
    const PhysicalContext& ctx = basis.context();
    const double wx = conjugate_momentum(basis, x);
    return wx * wx / (2.0 * ctx.m) + basis.potential_at(x) - ctx.E +
           ctx.hbar * ctx.hbar / (4.0 * ctx.m) * schwarzian(basis, x);
}

double residual_scale(const BasisPair& basis, double x) {
    const double E = basis.context().E;
    return std::max(std::fabs(E), std::fabs(basis.potential_at(x) - E));
}

QshjePoint qshje_point(const BasisPair& basis, double x, double x_ref) {
    const MomentumDerivatives d = momentum_derivatives(basis, x);
    QshjePoint p;
    p.x = x;
    p.W = reduced_action(basis, x, x_ref);
    p.Wx = d.Wx;
    p.Wxx = d.Wxx;
    p.Wxxx = d.Wxxx;
    p.schwarzian = schwarzian(basis, x);
    p.residual = qshje_residual(basis, x);
    return p;
}

double free_phase_shift(const Microstate& ms) { return std::atan2(ms.c(), ms.a() - ms.b()); }

double free_momentum_closed(const PhysicalContext& ctx, const Microstate& ms, double x) {
    const double p = std::sqrt(2.0 * ctx.m * ctx.E);
    const double k = p / ctx.hbar;
    const double amplitude = std::sqrt(ms.indeterminacy_amplitude_sq());
    return 2.0 * p * std::sqrt(ms.determinant()) /
           ((ms.a() + ms.b()) + amplitude * std::cos(2.0 * k * x - free_phase_shift(ms)));
}

}  // namespace floydlab
