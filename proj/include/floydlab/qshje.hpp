#pragma once

#include "floydlab/basis.hpp"

namespace floydlab {

/// One sample of the quantum stationary Hamilton-Jacobi solution.
struct QshjePoint {
    double x = 0.0;
    double W = 0.0;  // W(x) - W(x_ref)
    double Wx = 0.0;
    double Wxx = 0.0;
    double Wxxx = 0.0;
    double schwarzian = 0.0;
    double residual = 0.0;
};

struct MomentumDerivatives {
    double Wx = 0.0;
    double Wxx = 0.0;
    double Wxxx = 0.0;
};

/// W_x = (2m)^{1/2} / (a phi^2 + b theta^2 + c phi theta).
double conjugate_momentum(const BasisPair& basis, double x);

/// W_x and its first two x-derivatives, differentiated analytically with
/// phi'' and theta'' eliminated through the Schroedinger equation.
MomentumDerivatives momentum_derivatives(const BasisPair& basis, double x);

/// Principal value of the action phase: atan2(b theta + c phi / 2, (ab - c^2/4)^{1/2} phi).
/// hbar times this equals the arctan form of W with K = 0 wherever phi > 0.
double action_phase(const BasisPair& basis, double x);

/// W(x) - W(x_ref), continuing the arctan form across the poles of theta/phi so
/// that dW/dx = W_x > 0. Throws UnwrapError if the phase fails to increase.
double reduced_action(const BasisPair& basis, double x, double x_ref);

/// Schwarzian derivative <W; x> = W_xxx / W_x - (3/2) (W_xx / W_x)^2.
double schwarzian(const BasisPair& basis, double x);

/// W_x^2 / 2m + V - E + (hbar^2 / 4m) <W; x>.
double qshje_residual(const BasisPair& basis, double x);

/// max(E, |V(x) - E|): the energy scale residuals are measured against.
double residual_scale(const BasisPair& basis, double x);

QshjePoint qshje_point(const BasisPair& basis, double x, double x_ref);

/// Free-particle momentum written as a cosine in 2kx:
/// 2 (2mE)^{1/2} (ab - c^2/4)^{1/2} / [(a + b) + ((a - b)^2 + c^2)^{1/2} cos(2kx - delta)],
/// delta = free_phase_shift(ms).
double free_momentum_closed(const PhysicalContext& ctx, const Microstate& ms, double x);

/// Phase delta = atan2(c, a - b) of the cosine form; 0 for a = b, c = 0.
double free_phase_shift(const Microstate& ms);

}  // namespace floydlab
