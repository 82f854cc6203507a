#include <cmath>
#include <random>

#include "doctest.h"
#include "floydlab/dynamics.hpp"
#include "floydlab/errors.hpp"
#include "floydlab/qshje.hpp"
#include "floydlab/specfun.hpp"
#include "support/oracles.hpp"

using namespace floydlab;

TEST_SUITE("dynamics") {

TEST_CASE("free Jacobi time equals x W_x / 2E") {
    std::mt19937_64 rng(17);
    const PhysicalContext ctx{1.2, 0.9, 0.8};
    for (int i = 0; i < 10; ++i) {
        const Microstate ms = oracle::random_microstate(rng);
        const BasisFamily family = basis_family(ctx, ms, FreePotential{});
        for (int j = 0; j < 10; ++j) {
            const double x = oracle::uniform(rng, -8.0, 8.0);
            CAPTURE(x);
            const double closed = trajectory_time_free_closed(ctx, ms, x);
            CHECK(std::fabs(trajectory_time(family, ctx, x) - closed) < 1e-8 * (1.0 + std::fabs(closed)));
        }
    }
}

TEST_CASE("classical microstate moves classically") {
    const PhysicalContext ctx{2.0, 1.0, 0.7};
    const Microstate ms = make_microstate(1.0, 1.0, 0.0);
    const Trajectory traj = make_trajectory(ctx, ms, FreePotential{}, {-3.0, -1.0, 0.5, 4.0});
    REQUIRE(traj.samples.size() == 4);
    for (const TrajectorySample& s : traj.samples) {
        const double classical = std::sqrt(ctx.m / (2.0 * ctx.E)) * s.x;
        CHECK(std::fabs(s.t_minus_t0 - classical) < 1e-10 * std::max(1.0, std::fabs(classical)));
    }
}

TEST_CASE("linear Jacobi time is minus the closed form") {
    std::mt19937_64 rng(19);
    const PhysicalContext ctx{1.0, 1.0, 1.5};
    const double f = 0.7;
    for (int i = 0; i < 5; ++i) {
        const Microstate ms = oracle::random_microstate(rng);
        const BasisFamily family = basis_family(ctx, ms, LinearPotential{f});
        for (double x = -20.0; x < 4.0; x += 1.3) {
            CAPTURE(x);
            const double closed = trajectory_time_linear_closed(ctx, ms, f, x);
            CHECK(closed > 0.0);
            CHECK(oracle::rel(-trajectory_time(family, ctx, x), closed) < 1e-7);
        }
    }
}

TEST_CASE("linear trajectory approaches the classical time far from the turning point") {
    const PhysicalContext ctx{1.0, 1.0, 2.0};
    const double f = 1.0;
    const Microstate ms = make_microstate(1.0, 1.0, 0.0);
    const double alpha = std::cbrt(2.0 * ctx.m * f / (ctx.hbar * ctx.hbar));
    for (double zeta = -40.0; zeta <= -8.0; zeta += 0.5) {
        const double x = ctx.E / f + zeta / alpha;
        const double classical = classical_reference(ctx, LinearPotential{f}, x).t_minus_t0;
        CHECK(oracle::rel(trajectory_time_linear_closed(ctx, ms, f, x), classical) < 1e-3);
    }
    CHECK_THROWS_AS(trajectory_time_linear_closed(ctx, ms, f, 500.0), Error);
}

TEST_CASE("transition width") {
    const double f = 1.3;
    const PhysicalContext base{1.0, 1.0, 1.0};
    const TransitionWidth w1 = transition_width(base, f, 1e-2);
    const TransitionWidth w2 = transition_width({1.0, 1.0, 2.0}, f, 1e-2);
    CHECK(oracle::rel(w2.zeta_width, w1.zeta_width) < 1e-10);
    const TransitionWidth wh = transition_width({1.0, 0.125, 1.0}, f, 1e-2);
    CHECK(oracle::rel(wh.x_width / w1.x_width, std::pow(0.125, 2.0 / 3.0)) < 1e-10);
    // The deviation at the edge equals the tolerance.
    const double x = base.E / f + w1.zeta_left * w1.x_width / w1.zeta_width;
    const Microstate ms = make_microstate(1.0, 1.0, 0.0);
    const double q = trajectory_time_linear_closed(base, ms, f, x);
    const double c = classical_reference(base, LinearPotential{f}, x).t_minus_t0;
    CHECK(std::fabs(std::fabs(q - c) / c - 1e-2) < 1e-9);
    CHECK(transition_width(base, f, 0.49).zeta_width < w1.zeta_width);
    CHECK(transition_width(base, f, 1e-4).zeta_width > w1.zeta_width);
    CHECK_THROWS_AS(transition_width(base, f, 0.5), DomainError);
    CHECK_THROWS_AS(transition_width(base, f, 0.0), DomainError);
    CHECK_THROWS_AS(transition_width(base, -1.0, 0.1), DomainError);
}

TEST_CASE("cycle-averaged action minus 2E times averaged time is position independent") {
    const PhysicalContext ctx{1.0, 1.0, 0.5};
    std::mt19937_64 rng(23);
    for (int i = 0; i < 5; ++i) {
        const Microstate ms = oracle::random_microstate(rng);
        const CycleAveragedMotion a = cycle_averaged_motion_free(ctx, ms, -3.0);
        const CycleAveragedMotion b = cycle_averaged_motion_free(ctx, ms, 11.0);
        CHECK(std::fabs(a.action_offset - b.action_offset) < 1e-10);
        CHECK(std::fabs(a.mean_time - std::sqrt(ctx.m / (2.0 * ctx.E)) * -3.0) < 1e-10);
        CHECK(a.mean_principal == doctest::Approx(a.mean_action - ctx.E * a.mean_time));
    }
    const CycleAveragedMotion cl = cycle_averaged_motion_free(ctx, make_microstate(1.0, 1.0, 0.0), 2.0);
    CHECK(std::fabs(cl.action_offset) < 1e-12);
}

TEST_CASE("principal function") {
    const PhysicalContext ctx{1.0, 1.0, 0.5};
    const BasisPair b = basis_free(ctx, make_microstate(1.0, 1.0, 0.0));
    CHECK(principal_function(b, 2.0, 0.0, 2.0) == doctest::Approx(2.0 - 0.5 * 2.0));
}

TEST_CASE("square well has no energy family") {
    CHECK_THROWS_AS(basis_family({}, make_microstate(1.0, 1.0, 0.0), SquareWellPotential{5.0, 1.0}),
                    DomainError);
}

}
