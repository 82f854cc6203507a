#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "floydlab/basis.hpp"

namespace floydlab {

struct WellLevel {
    int n = 0;
    double E = 0.0;
    double k = 0.0;
    double kappa = 0.0;
};

struct WellSpectrum {
    double U = 0.0;
    double q = 0.0;
    std::vector<WellLevel> levels;  // increasing E
};

/// Symmetric bound states k tan(kq) = kappa, one per branch k q in (n pi, n pi + pi/2)
/// with k below (2mU)^{1/2} / hbar. ctx.E is ignored. Throws NoLevelError if none.
WellSpectrum solve_symmetric_levels(const PhysicalContext& ctx, double U, double q,
                                    std::optional<std::size_t> max_levels = std::nullopt);

/// k sin(kq) - kappa cos(kq) at the level's energy; zero on shell.
double level_residual(const WellLevel& level, double q);

/// Half-width that places energy E on symmetric level n of a well of height U.
double half_width_for_level(const PhysicalContext& ctx, double U, double E, int n);

/// Context with ctx.E replaced by the level energy.
PhysicalContext on_shell(const PhysicalContext& ctx, const WellLevel& level);

struct TimingReport {
    double t_plus_R = 0.0;
    double t_minus_R = 0.0;
    double t_libration = 0.0;
    double fraction_forbidden = 0.0;
};

/// Round-trip time beyond the wall at x = +q (side = +1) or x = -q (side = -1):
/// 2 (ab - c^2/4)^{1/2} (1 + rho^2) / (a +- c rho + b rho^2) * m / (hbar kappa k), rho = kappa / k.
double dwell_time(const PhysicalContext& ctx, const WellLevel& level, const Microstate& ms,
                  int side);

/// 4 (ab - c^2/4)^{1/2} (1 + rho^2)(a + b rho^2) / (a^2 + (2ab - c^2) rho^2 + b^2 rho^4)
///   * m (q + 1/kappa) / (hbar k).
double libration_period(const PhysicalContext& ctx, const WellLevel& level, const Microstate& ms,
                        double q);

/// hbar / (hbar + [2m(U - E)]^{1/2} q) = 1 / (kappa q + 1).
double fractional_forbidden_time(const PhysicalContext& ctx, const WellLevel& level, double q);

TimingReport timing_report(const PhysicalContext& ctx, const WellLevel& level,
                           const Microstate& ms, double q);

/// Reduced action accumulated beyond the wall on one side, from x = +-q out
/// to infinity: hbar [pi/2 - atan((b rho +- c/2) / (ab - c^2/4)^{1/2})].
/// Defined for any 0 < E < U (off shell too) through rho = kappa(E) / k(E).
double exterior_action(const PhysicalContext& ctx, double U, const Microstate& ms, int side);

/// Dwell time from Jacobi's theorem: 2 d/dE of exterior_action at fixed microstate.
double dwell_time_jacobi(const PhysicalContext& ctx, double U, const Microstate& ms, int side);

/// exterior_action evaluated instead as the improper integral of W_x from the
/// wall to infinity.
double exterior_action_quadrature(const PhysicalContext& ctx, double U, const Microstate& ms,
                                  int side);

/// Trajectory time t - t0 (t0 at x = 0) for level energy ctx.E. Inside the well
/// x W_x / 2E; beyond a wall the Jacobi derivative of the exterior phase
/// increment, with the exterior pair continued off shell through rho(E).
double square_well_time(const PhysicalContext& ctx, double U, double q, const Microstate& ms,
                        double x);

}  // namespace floydlab
