#include "floydlab/basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "floydlab/errors.hpp"
#include "floydlab/specfun.hpp"

namespace floydlab {

BasisPair::BasisPair(Potential potential, Microstate ms, PhysicalContext ctx)
    : potential_(potential), ms_(ms), ctx_(ctx) {
    scale_ = std::pow(2.0 * ctx.m / (ctx.hbar * ctx.hbar * ms.determinant()), 0.25);
}

double BasisPair::airy_argument(double x) const {
    const auto* lin = std::get_if<LinearPotential>(&potential_);
    if (lin == nullptr) throw DomainError("airy_argument: not a linear potential");
    return alpha_ * (x - ctx_.E / lin->f);
}

BasisValues BasisPair::unit_pair(double x) const {
    if (std::holds_alternative<FreePotential>(potential_)) {
        const double rk = std::sqrt(k_);
        const double c = std::cos(k_ * x), s = std::sin(k_ * x);
        return {c / rk, s / rk, -rk * s, rk * c};
    }
    if (const auto* well = std::get_if<SquareWellPotential>(&potential_)) {
        const double rk = std::sqrt(k_);
        if (std::fabs(x) < well->q) {
            const double c = std::cos(k_ * x), s = std::sin(k_ * x);
            return {c / rk, s / rk, -rk * s, rk * c};
        }
        // Exterior branches for x >= q; x <= -q follows from phi even, theta odd.
        const double y = std::fabs(x) - well->q;
        const double grow = std::exp(kappa_ * y);
        const double decay = std::exp(-kappa_ * y);
        const double u = cos_kq_ * decay / rk;
        const double du = -kappa_ * u;
        const double v = (grow - cos_2kq_ * decay) / (2.0 * sin_kq_ * rk);
        const double dv = kappa_ * (grow + cos_2kq_ * decay) / (2.0 * sin_kq_ * rk);
        if (x > 0.0) return {u, v, du, dv};
        return {u, -v, -du, dv};
    }
    const double z = airy_argument(x);
    const AiryValues ai = airy_eval(z);
    const double norm = std::sqrt(std::numbers::pi / alpha_);
    return {norm * ai.ai, norm * ai.bi, norm * alpha_ * ai.ai_prime, norm * alpha_ * ai.bi_prime};
}

BasisValues BasisPair::evaluate(double x) const {
    const BasisValues u = unit_pair(x);
    return {scale_ * u.phi, scale_ * u.theta, scale_ * u.dphi, scale_ * u.dtheta};
}

double BasisPair::max_wavenumber(double x1, double x2) const {
    if (const auto* lin = std::get_if<LinearPotential>(&potential_)) {
        const double kinetic = ctx_.E - lin->f * std::min(x1, x2);
        const double local = kinetic > 0.0 ? std::sqrt(2.0 * ctx_.m * kinetic) / ctx_.hbar : 0.0;
        return std::max(local, alpha_);
    }
    if (std::holds_alternative<SquareWellPotential>(potential_)) return std::max(k_, kappa_);
    return k_;
}

BasisPair basis_free(const PhysicalContext& ctx, const Microstate& ms) {
    validate(ctx);
    if (!(ctx.E > 0.0)) throw DomainError("free-particle basis requires E > 0");
    BasisPair pair(FreePotential{}, ms, ctx);
    pair.k_ = std::sqrt(2.0 * ctx.m * ctx.E) / ctx.hbar;
    return pair;
}

double square_well_level_mismatch(const PhysicalContext& ctx, double U, double q) {
    const double k = std::sqrt(2.0 * ctx.m * ctx.E) / ctx.hbar;
    const double kappa = std::sqrt(2.0 * ctx.m * (U - ctx.E)) / ctx.hbar;
    const double s = std::sin(k * q), c = std::cos(k * q);
    const double residual = k * s - kappa * c;
    // d/dk of k sin(kq) - kappa cos(kq), with d kappa / dk = -k / kappa.
    const double slope = s + k * q * c + (k / kappa) * c + kappa * q * s;
    const double dE_dk = ctx.hbar * ctx.hbar * k / ctx.m;
    return std::fabs(residual / slope * dE_dk) / ctx.E;
}

BasisPair basis_square_well(const PhysicalContext& ctx, const Microstate& ms, double U, double q) {
    validate(ctx);
    validate(Potential{SquareWellPotential{U, q}});
    if (!(ctx.E > 0.0) || !(ctx.E < U)) {
        throw DomainError("square-well basis requires 0 < E < U");
    }
    const double mismatch = square_well_level_mismatch(ctx, U, q);
    if (!(mismatch <= 1e-8)) {
        throw EigenvalueError("E = " + std::to_string(ctx.E) +
                              " is not a symmetric square-well level (relative mismatch " +
                              std::to_string(mismatch) + ")");
    }
    BasisPair pair(SquareWellPotential{U, q}, ms, ctx);
    pair.k_ = std::sqrt(2.0 * ctx.m * ctx.E) / ctx.hbar;
    pair.kappa_ = std::sqrt(2.0 * ctx.m * (U - ctx.E)) / ctx.hbar;
    pair.cos_kq_ = std::cos(pair.k_ * q);
    pair.sin_kq_ = std::sin(pair.k_ * q);
    pair.cos_2kq_ = std::cos(2.0 * pair.k_ * q);
    return pair;
}

BasisPair basis_linear(const PhysicalContext& ctx, const Microstate& ms, double f) {
    validate(ctx);
    validate(Potential{LinearPotential{f}});
    BasisPair pair(LinearPotential{f}, ms, ctx);
    pair.alpha_ = std::cbrt(2.0 * ctx.m * f / (ctx.hbar * ctx.hbar));
    return pair;
}

BasisPair make_basis(const PhysicalContext& ctx, const Microstate& ms, const Potential& potential) {
    if (std::holds_alternative<FreePotential>(potential)) return basis_free(ctx, ms);
    if (const auto* well = std::get_if<SquareWellPotential>(&potential)) {
        return basis_square_well(ctx, ms, well->U, well->q);
    }
    return basis_linear(ctx, ms, std::get<LinearPotential>(potential).f);
}

}  // namespace floydlab
