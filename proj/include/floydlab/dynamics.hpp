#pragma once

#include <functional>
#include <vector>

#include "floydlab/basis.hpp"

namespace floydlab {

/// E -> BasisPair at fixed microstate and potential; needed for W_E.
using BasisFamily = std::function<BasisPair(double E)>;

/// Family for the free particle or the linear potential. The square well
/// only has a basis on shell, so it has no energy family (DomainError).
BasisFamily basis_family(const PhysicalContext& ctx, const Microstate& ms,
                         const Potential& potential);

/// Jacobi's theorem: t - t0 = dW/dE at fixed x, with W the arctan form
/// (K = 0). Central differences in E (step 1e-5 E, Richardson-extrapolated)
/// on the phase, with each shifted phase wrapped to the branch of the
/// unshifted one. For the free particle t0 is the passage through x = 0.
double trajectory_time(const BasisFamily& family, const PhysicalContext& ctx, double x);

/// Free particle: x W_x(x) / 2E, exact because W depends on E only through kx.
double trajectory_time_free_closed(const PhysicalContext& ctx, const Microstate& ms, double x);

/// Linear potential:
/// (hbar^{1/3} / pi) (ab - c^2/4)^{1/2} (2m / f^2)^{1/3} / [a Ai^2 + b Bi^2 + c Ai Bi]
/// at Airy argument (2mf)^{1/3} (x - E/f) / hbar^{2/3}. This is the time still
/// to elapse before the turning point, i.e. the magnitude of W_E; Jacobi's
/// W_E itself carries a minus sign. Throws OverflowError deep in the forbidden region.
double trajectory_time_linear_closed(const PhysicalContext& ctx, const Microstate& ms, double f,
                                     double x);

struct TrajectorySample {
    double x = 0.0;
    double t_minus_t0 = 0.0;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    Microstate ms;
    PhysicalContext ctx;
    Potential potential;
};

/// Samples t - t0 over an ordered grid (free or linear potential).
Trajectory make_trajectory(const PhysicalContext& ctx, const Microstate& ms,
                           const Potential& potential, const std::vector<double>& xs);

/// Hamilton's principal function S = [W(x) - W(x_ref)] - E (t - t0).
double principal_function(const BasisPair& basis, double x, double x_ref, double t_minus_t0);

/// Free-particle averages over one period pi/k of the cosine term, with the
/// explicit factor x in t - t0 = x W_x / 2E held fixed.
struct CycleAveragedMotion {
    double mean_time = 0.0;    // <t - t0>
    double mean_action = 0.0;  // <W(x + x') - W(0)>
    double mean_principal = 0.0;  // <W> - E <t - t0>, with t0 = 0
    double action_offset = 0.0;   // <W> - 2E <t - t0>; x-independent
};

CycleAveragedMotion cycle_averaged_motion_free(const PhysicalContext& ctx, const Microstate& ms,
                                               double x);

struct TransitionWidth {
    double zeta_left = 0.0;   // Airy argument where the deviation first reaches tol
    double zeta_width = 0.0;  // -zeta_left, independent of E
    double x_width = 0.0;     // zeta_width * hbar^{2/3} / (2mf)^{1/3}
};

/// Extent of the allowed-side neighbourhood of the turning point x_t = E/f in
/// which the a = b, c = 0 trajectory deviates from the classical form by more
/// than tol_rel. Throws DomainError unless f > 0 and 0 < tol_rel < 0.5 .
TransitionWidth transition_width(const PhysicalContext& ctx, double f, double tol_rel);

}  // namespace floydlab
