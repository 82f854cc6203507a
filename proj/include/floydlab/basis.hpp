#pragma once

#include "floydlab/core_model.hpp"
#include "floydlab/potential.hpp"

namespace floydlab {

/// phi, theta and their x-derivatives at one point.
struct BasisValues {
    double phi = 0.0;
    double theta = 0.0;
    double dphi = 0.0;
    double dtheta = 0.0;

    double wronskian() const { return phi * dtheta - dphi * theta; }
};

/// A pair of independent solutions of the stationary Schroedinger equation
/// at energy E, normalized so that W^2 = 2m / [hbar^2 (ab - c^2/4)] for the
/// carried microstate.
///
/// Every pair is built from a unit-Wronskian pair (u, v) and scaled by
/// s = [2m / (hbar^2 (ab - c^2/4))]^{1/4}; the microstate only enters
/// through s.
class BasisPair {
public:
    const Potential& potential() const { return potential_; }
    const Microstate& microstate() const { return ms_; }
    const PhysicalContext& context() const { return ctx_; }

    BasisValues evaluate(double x) const;

    /// The unit-Wronskian pair before scaling.
    BasisValues unit_pair(double x) const;

    double scale() const { return scale_; }

    /// Target Wronskian [2m / (hbar^2 (ab - c^2/4))]^{1/2}.
    double wronskian() const { return scale_ * scale_; }

    double potential_at(double x) const { return potential_value(potential_, x); }
    double potential_slope(double x) const { return floydlab::potential_slope(potential_, x); }

    /// Upper bound on the local wavenumber over [x1, x2] (or the natural
    /// length scale of the potential, whichever is larger). Used to size
    /// steps that never skip a full oscillation.
    double max_wavenumber(double x1, double x2) const;

    /// Free and square-well interior wavenumber (2mE)^{1/2} / hbar.
    double k() const { return k_; }
    /// Square-well decay constant [2m(U - E)]^{1/2} / hbar; zero otherwise.
    double kappa() const { return kappa_; }
    /// Linear potential Airy scale (2mf / hbar^2)^{1/3}; zero otherwise.
    double airy_scale() const { return alpha_; }

    /// Airy argument (2mf / hbar^2)^{1/3} (x - E/f) for the linear potential.
    double airy_argument(double x) const;

    friend BasisPair basis_free(const PhysicalContext&, const Microstate&);
    friend BasisPair basis_square_well(const PhysicalContext&, const Microstate&, double, double);
    friend BasisPair basis_linear(const PhysicalContext&, const Microstate&, double);

private:
    BasisPair(Potential potential, Microstate ms, PhysicalContext ctx);

    Potential potential_;
    Microstate ms_;
    PhysicalContext ctx_;
    double scale_ = 1.0;
    double k_ = 0.0;
    double kappa_ = 0.0;
    double alpha_ = 0.0;
    // Square-well interface constants.
    double cos_kq_ = 0.0;
    double sin_kq_ = 0.0;
    double cos_2kq_ = 0.0;
};

/// phi = s cos(kx) / k^{1/2}, theta = s sin(kx) / k^{1/2}. Throws DomainError if E <= 0.
BasisPair basis_free(const PhysicalContext& ctx, const Microstate& ms);

/// Symmetric bound state phi and antisymmetric unbound theta of the finite
/// square well of height U and half-width q. Throws DomainError unless
/// 0 < E < U, EigenvalueError unless E is a symmetric level to relative 1e-8.
BasisPair basis_square_well(const PhysicalContext& ctx, const Microstate& ms, double U, double q);

/// Airy pair phi ~ Ai, theta ~ Bi for V = f x. Throws DomainError unless f > 0.
BasisPair basis_linear(const PhysicalContext& ctx, const Microstate& ms, double f);

/// Dispatches on the potential kind.
BasisPair make_basis(const PhysicalContext& ctx, const Microstate& ms, const Potential& potential);

/// Relative distance in energy from E to the nearest symmetric square-well
/// level, estimated by one Newton step on k sin(kq) - kappa cos(kq).
double square_well_level_mismatch(const PhysicalContext& ctx, double U, double q);

}  // namespace floydlab
