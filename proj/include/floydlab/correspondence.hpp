#pragma once

#include <cstddef>
#include <vector>

#include "floydlab/basis.hpp"

namespace floydlab {

struct CycleStats {
    double mean_Wx = 0.0;
    double mean_Wx2 = 0.0;
    double variance = 0.0;
    double mean_quantum_potential = 0.0;  // <(hbar^2/4m) <W;x>>
    double mean_qp_balance = 0.0;         // E - <W_x^2>/2m
    double envelope_amplitude = 0.0;      // ((a-b)^2 + c^2)^{1/2}
    double phase_shift = 0.0;             // delta in cos(2kx - delta)
};

/// Averages over one period pi/k of the free-particle momentum, by quadrature.
/// Throws DomainError for a non-free basis, QuadratureError on non-convergence.
CycleStats cycle_stats(const BasisPair& basis);

/// The same statistics from the closed forms.
CycleStats cycle_stats_closed(const PhysicalContext& ctx, const Microstate& ms);

struct Envelope {
    double Wx_min = 0.0;
    double Wx_max = 0.0;
    double amplitude = 0.0;
};

/// Extremes of the free-particle W_x; they sit where the cosine is +-1.
Envelope indeterminacy_envelope(const BasisPair& basis);

enum class SweepAxis { Energy, Hbar };

struct SweepScenario {
    Potential potential = FreePotential{};
    PhysicalContext ctx;
    Microstate ms = make_microstate(1.0, 1.0, 0.0);
    int level = 0;  // square-well level index
};

struct SweepPoint {
    double value = 0.0;  // E or hbar
    double E = 0.0;
    double hbar = 0.0;
    // Free particle; momenta divided by (2mE)^{1/2}, energies by E.
    CycleStats stats;
    double mean_Wx_ratio = 0.0;
    double variance_ratio = 0.0;
    double qp_ratio = 0.0;
    double Wx_min_ratio = 0.0;
    double Wx_max_ratio = 0.0;
    double time_deviation = 0.0;  // max |t - t_cl| / |t_cl| over a period
    // Square well.
    double fraction_forbidden = 0.0;
    double t_plus_R = 0.0;
    double t_minus_R = 0.0;
    double t_libration = 0.0;
};

struct SweepDiagnostics {
    double mean_Wx_max_dev = 0.0;     // max |mean_Wx_ratio - 1|
    double variance_ratio_spread = 0.0;  // max - min of variance_ratio
    double variance_ratio_level = 0.0;   // last value
    bool fraction_decreasing = false;
    double fraction_last = 0.0;
};

struct SweepResult {
    SweepAxis axis = SweepAxis::Energy;
    std::vector<double> grid;
    std::vector<SweepPoint> points;
    SweepDiagnostics diagnostics;
};

/// Geometric grid of n points; increasing for Energy, decreasing for Hbar.
std::vector<double> geometric_grid(SweepAxis axis, double lo, double hi, std::size_t n);

/// Runs the scenario at every grid value, concurrently on up to `threads`
/// workers; points come back in grid order. Free particle: both axes.
/// Square well: Hbar axis only, on level `scenario.level` of each spectrum.
/// Throws ConfigError unless the grid has >= 4 points over >= 2 decades and is
/// strictly increasing (Energy) or strictly decreasing (Hbar).
SweepResult limit_sweep(SweepAxis axis, const std::vector<double>& grid,
                        const SweepScenario& scenario, std::size_t threads = 1);

}  // namespace floydlab
