#include "floydlab/core_model.hpp"

#include <cmath>
#include <string>

#include "floydlab/basis.hpp"
#include "floydlab/errors.hpp"

namespace floydlab {

void validate(const PhysicalContext& ctx) {
    if (!(ctx.m > 0.0) || !std::isfinite(ctx.m)) throw DomainError("mass must be positive");
    if (!(ctx.hbar > 0.0) || !std::isfinite(ctx.hbar)) throw DomainError("hbar must be positive");
    if (!std::isfinite(ctx.E)) throw DomainError("energy must be finite");
}

Microstate make_microstate(double a, double b, double c) {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) {
        throw DomainError("microstate coefficients must be finite");
    }
    if (!(a > 0.0) || !(b > 0.0)) {
        throw DomainError("microstate requires a > 0 and b > 0");
    }
    if (!(a * b - 0.25 * c * c > 0.0)) {
        throw DomainError("microstate requires ab - c^2/4 > 0 (got a=" + std::to_string(a) +
                          ", b=" + std::to_string(b) + ", c=" + std::to_string(c) + ")");
    }
    return Microstate(a, b, c);
}

InitialValues microstate_to_initial_values(const Microstate& ms, const PhysicalContext& ctx,
                                           const BasisPair& basis, double x0) {
    const BasisValues v = basis.evaluate(x0);
    if (!std::isfinite(v.phi) || !std::isfinite(v.theta) || !std::isfinite(v.dphi) ||
        !std::isfinite(v.dtheta)) {
        throw EvalError("basis not evaluable at x0 = " + std::to_string(x0));
    }
    const double q = ms.a() * v.phi * v.phi + ms.b() * v.theta * v.theta + ms.c() * v.phi * v.theta;
    const double dq = 2.0 * ms.a() * v.phi * v.dphi + 2.0 * ms.b() * v.theta * v.dtheta +
                      ms.c() * (v.dphi * v.theta + v.phi * v.dtheta);
    const double root2m = std::sqrt(2.0 * ctx.m);
    return {x0, root2m / q, -root2m * dq / (q * q)};
}

Microstate microstate_from_initial_values(const InitialValues& iv, const PhysicalContext& ctx,
                                          const BasisPair& basis) {
    if (!(iv.Wx0 > 0.0) || !std::isfinite(iv.Wx0) || !std::isfinite(iv.Wxx0)) {
        throw DomainError("initial values require a finite W_x(x0) > 0");
    }
    const BasisValues v = basis.evaluate(iv.x0);
    const double w = v.wronskian();
    if (!std::isfinite(w) || w == 0.0) {
        throw EvalError("basis not evaluable at x0 = " + std::to_string(iv.x0));
    }

    // Frame S = [s, s'] with s = (phi, theta), s' = (phi', theta') at x0.
    // The Gram matrix S^T M S of the coefficient form M = [[a, c/2], [c/2, b]]
    // has entries Q(x0), Q'(x0)/2 and an unknown gamma fixed by the determinant
    // condition det(M) w^2 = 2m / hbar^2.
    const double norm_s = std::hypot(v.phi, v.theta);
    const double norm_ds = std::hypot(v.dphi, v.dtheta);
    {
        // Singular values of the column-normalized frame.
        const double det = std::fabs(w) / (norm_s * norm_ds);
        const double smax = std::sqrt(1.0 + std::sqrt(std::max(0.0, 1.0 - det * det)));
        const double smin = det / smax;
        if (!(smin > 0.0) || smax / smin > 1e8) {
            throw SingularError("initial-value frame degenerate at x0 = " + std::to_string(iv.x0));
        }
    }
    const double root2m = std::sqrt(2.0 * ctx.m);
    const double alpha = root2m / iv.Wx0;
    const double beta = -0.5 * iv.Wxx0 * alpha / iv.Wx0;
    const double gamma = (2.0 * ctx.m / (ctx.hbar * ctx.hbar) + beta * beta) / alpha;

    // M = S^{-T} G S^{-1}, with S^{-1} = (1/w) [[theta', -phi'], [-theta, phi]].
    const double r00 = v.dtheta / w, r01 = -v.dphi / w;
    const double r10 = -v.theta / w, r11 = v.phi / w;
    const double a = r00 * (alpha * r00 + beta * r10) + r10 * (beta * r00 + gamma * r10);
    const double b = r01 * (alpha * r01 + beta * r11) + r11 * (beta * r01 + gamma * r11);
    const double m01 = r00 * (alpha * r01 + beta * r11) + r10 * (beta * r01 + gamma * r11);
    return make_microstate(a, b, 2.0 * m01);
}

ClassicalReference classical_reference(const PhysicalContext& ctx, const Potential& potential,
                                       double x) {
    validate(ctx);
    const double V = potential_value(potential, x);
    if (!(ctx.E > V)) {
        throw DomainError("classical reference requires E > V(x) at x = " + std::to_string(x));
    }
    ClassicalReference ref;
    ref.Wx = std::sqrt(2.0 * ctx.m * (ctx.E - V));
    if (const auto* lin = std::get_if<LinearPotential>(&potential)) {
        ref.t_minus_t0 = ref.Wx / lin->f;
    } else {
        ref.t_minus_t0 = std::sqrt(ctx.m / (2.0 * ctx.E)) * x;
    }
    return ref;
}

}  // namespace floydlab
