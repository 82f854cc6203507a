#pragma once

#include "floydlab/potential.hpp"

namespace floydlab {

class BasisPair;

/// Mass, reduced Planck constant and energy in scaled units.
struct PhysicalContext {
    double m = 1.0;
    double hbar = 1.0;
    double E = 1.0;
};

/// Throws DomainError unless m > 0, hbar > 0 and E is finite.
void validate(const PhysicalContext& ctx);

/// Coefficients (a, b, c) of the quadratic form a phi^2 + b theta^2 + c phi theta
/// that selects one particular solution of the quantum stationary
/// Hamilton-Jacobi equation. The form is positive definite by construction.
class Microstate {
public:
    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }

    /// a b - c^2/4, the determinant of the quadratic form.
    double determinant() const { return a_ * b_ - 0.25 * c_ * c_; }

    /// (a - b)^2 + c^2, the squared amplitude of the residual indeterminacy.
    double indeterminacy_amplitude_sq() const { return (a_ - b_) * (a_ - b_) + c_ * c_; }

    bool is_classical() const { return a_ == b_ && c_ == 0.0; }

    friend Microstate make_microstate(double a, double b, double c);

private:
    Microstate(double a, double b, double c) : a_(a), b_(b), c_(c) {}
    double a_;
    double b_;
    double c_;
};

/// Throws DomainError if a <= 0, b <= 0 or ab - c^2/4 <= 0.
Microstate make_microstate(double a, double b, double c);

struct InitialValues {
    double x0 = 0.0;
    double Wx0 = 0.0;
    double Wxx0 = 0.0;
};

InitialValues microstate_to_initial_values(const Microstate& ms, const PhysicalContext& ctx,
                                           const BasisPair& basis, double x0);

/// Recovers (a, b, c) from [W_x(x0), W_xx(x0)] and the Wronskian carried by
/// `basis`. The basis functions are treated as fixed; only their values,
/// slopes and Wronskian at x0 enter.
///
/// Throws DomainError when Wx0 <= 0 or the recovered form is not positive
/// definite, SingularError when the value/slope frame at x0 is numerically
/// degenerate (condition number above 1e8).
Microstate microstate_from_initial_values(const InitialValues& iv, const PhysicalContext& ctx,
                                          const BasisPair& basis);

struct ClassicalReference {
    double Wx = 0.0;
    double t_minus_t0 = 0.0;
};

/// Classical momentum [2m(E - V)]^{1/2} and classical time of flight.
/// Free particle: t - t0 = (m / 2E)^{1/2} x. Linear potential:
/// [2m(E - f x)]^{1/2} / f, the time remaining until the turning point
/// (a magnitude). Square well: free form inside the well.
/// Throws DomainError when E <= V(x).
ClassicalReference classical_reference(const PhysicalContext& ctx, const Potential& potential,
                                       double x);

}  // namespace floydlab
