#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "floydlab/errors.hpp"
#include "floydlab/qshje.hpp"
#include "floydlab/squarewell.hpp"
#include "support/oracles.hpp"

using namespace floydlab;

TEST_SUITE("squarewell") {

TEST_CASE("ground level of the U = 50 well") {
    const PhysicalContext ctx{1.0, 1.0, 1.0};
    const WellSpectrum s = solve_symmetric_levels(ctx, 50.0, 1.0);
    const double k0 = oracle::bisect([](double k) { return k * std::tan(k) - std::sqrt(100.0 - k * k); },
                                     1.0, std::numbers::pi / 2 - 1e-12);
    CHECK(k0 > 1.3);
    CHECK(std::fabs(s.levels[0].k - k0) < 1e-13);
    CHECK(s.levels[0].E == doctest::Approx(k0 * k0 / 2).epsilon(1e-14));
    for (const WellLevel& l : s.levels) {
        CHECK(std::fabs(level_residual(l, 1.0)) < 1e-10);
        CHECK(l.k * 1.0 > l.n * std::numbers::pi);
        CHECK(l.k * 1.0 < (l.n + 0.5) * std::numbers::pi);
        CHECK_NOTHROW(basis_square_well(on_shell(ctx, l), make_microstate(1.0, 1.0, 0.0), 50.0, 1.0));
    }
}

TEST_CASE("level count matches a brute sign-change scan") {
    const PhysicalContext ctx{1.0, 0.7, 1.0};
    for (double U : {0.05, 3.0, 50.0, 400.0}) {
        const double q = 1.3;
        const double k0 = std::sqrt(2.0 * ctx.m * U) / ctx.hbar;
        int crossings = 0;
        double prev = -1.0;  // F(0) = -k0 < 0
        for (long i = 1; i <= 400000; ++i) {
            const double k = k0 * static_cast<double>(i) / 400000.0;
            const double F = k * std::sin(k * q) - std::sqrt(std::max(0.0, k0 * k0 - k * k)) * std::cos(k * q);
            // k sin - kappa cos only vanishes where tan(kq) = kappa / k > 0.
            if ((prev < 0) != (F < 0)) ++crossings;
            prev = F;
        }
        CAPTURE(U);
        CHECK(solve_symmetric_levels(ctx, U, q).levels.size() == static_cast<std::size_t>(crossings));
    }
}

TEST_CASE("hard-wall limit") {
    const WellSpectrum s = solve_symmetric_levels({1.0, 1.0, 1.0}, 1e6, 1.0);
    CHECK(std::fabs(s.levels[0].k - std::numbers::pi / 2) < 1e-2);
    CHECK(solve_symmetric_levels({1.0, 1.0, 1.0}, 1e-8, 1.0).levels.size() == 1);
    CHECK(solve_symmetric_levels({1.0, 1.0, 1.0}, 50.0, 1.0, 2).levels.size() == 2);
    CHECK_THROWS_AS(solve_symmetric_levels({1.0, 1.0, 1.0}, 0.0, 1.0), DomainError);
}

TEST_CASE("classical dwell time and libration period") {
    const PhysicalContext ctx{1.0, 1.0, 1.0};
    const WellSpectrum s = solve_symmetric_levels(ctx, 50.0, 1.0);
    const Microstate cl = make_microstate(1.0, 1.0, 0.0);
    for (const WellLevel& l : s.levels) {
        const PhysicalContext c = on_shell(ctx, l);
        const double tR = dwell_time(c, l, cl, 1);
        CHECK(oracle::rel(tR, ctx.hbar / std::sqrt(l.E * (50.0 - l.E))) < 1e-12);
        CHECK(tR == doctest::Approx(dwell_time(c, l, cl, -1)));
        CHECK(oracle::rel(libration_period(c, l, cl, 1.0), 4.0 * ctx.m * (1.0 + 1.0 / l.kappa) / (ctx.hbar * l.k)) < 1e-13);
    }
    const WellLevel& g = s.levels[0];
    const Microstate skew = make_microstate(1.0, 1.0, 0.8);
    CHECK(dwell_time(on_shell(ctx, g), g, skew, 1) != doctest::Approx(dwell_time(on_shell(ctx, g), g, skew, -1)));
    CHECK_THROWS_AS(dwell_time(ctx, g, cl, 0), DomainError);
}

TEST_CASE("dwell time falls as the barrier rises") {
    const PhysicalContext ctx{1.0, 1.0, 1.0};
    const Microstate cl = make_microstate(1.0, 1.0, 0.0);
    double previous = INFINITY;
    for (double U : {2.0, 4.0, 8.0, 16.0}) {
        const double E = 1.0;
        const double q = half_width_for_level(ctx, U, E, 0);
        const WellLevel level{0, E, std::sqrt(2.0 * E), std::sqrt(2.0 * (U - E))};
        CHECK(std::fabs(level_residual(level, q)) < 1e-13);
        const double t = dwell_time({1.0, 1.0, E}, level, cl, 1);
        CHECK(t < previous);
        previous = t;
    }
}

TEST_CASE("timing ratio identity and scale invariance") {
    std::mt19937_64 rng(29);
    const PhysicalContext ctx{1.3, 0.6, 1.0};
    const WellSpectrum s = solve_symmetric_levels(ctx, 40.0, 1.7);
    for (int i = 0; i < 200; ++i) {
        const Microstate ms = oracle::random_microstate(rng);
        const WellLevel& l = s.levels[static_cast<std::size_t>(i) % s.levels.size()];
        const PhysicalContext c = on_shell(ctx, l);
        const TimingReport t = timing_report(c, l, ms, 1.7);
        CHECK(oracle::rel((t.t_plus_R + t.t_minus_R) / t.t_libration, 1.0 / (l.kappa * 1.7 + 1.0)) < 1e-12);
        CHECK(t.fraction_forbidden > 0.0);
        CHECK(t.fraction_forbidden < 1.0);
        const double lambda = oracle::uniform(rng, 0.1, 10.0);
        const Microstate scaled = make_microstate(lambda * ms.a(), lambda * ms.b(), lambda * ms.c());
        CHECK(oracle::rel(libration_period(c, l, scaled, 1.7), t.t_libration) < 1e-13);
    }
}

TEST_CASE("fraction of forbidden time") {
    const PhysicalContext ctx{1.0, 1.0, 1.0};
    const WellSpectrum s = solve_symmetric_levels(ctx, 200.0, 1.0);
    for (std::size_t i = 1; i < s.levels.size(); ++i) {
        CHECK(fractional_forbidden_time(ctx, s.levels[i], 1.0) > fractional_forbidden_time(ctx, s.levels[i - 1], 1.0));
    }
    const double kappa0 = std::sqrt(100.0 - std::pow(solve_symmetric_levels(ctx, 50.0, 1.0).levels[0].k, 2));
    const WellLevel g = solve_symmetric_levels(ctx, 50.0, 1.0).levels[0];
    CHECK(fractional_forbidden_time(ctx, g, 1.0) == doctest::Approx(1.0 / (kappa0 + 1.0)).epsilon(1e-12));
}

TEST_CASE("fraction plateaus when the gap U - E is held fixed") {
    // Levels n = 0..5 of wells whose height tracks the level with U - E = 3.
    const PhysicalContext ctx{1.0, 1.0, 1.0};
    const double q = 1.0, gap = 3.0, kappa = std::sqrt(2.0 * gap);
    for (int n = 0; n < 6; ++n) {
        const double k = oracle::bisect(
            [&](double k) { return k * q - std::atan(kappa / k) - n * std::numbers::pi; }, 1e-6, 100.0);
        const double E = 0.5 * k * k;
        const WellSpectrum s = solve_symmetric_levels(ctx, E + gap, q);
        REQUIRE(s.levels.size() > static_cast<std::size_t>(n));
        const WellLevel& l = s.levels[static_cast<std::size_t>(n)];
        CHECK(l.E == doctest::Approx(E).epsilon(1e-11));
        CHECK(fractional_forbidden_time(ctx, l, q) == doctest::Approx(1.0 / (kappa * q + 1.0)).epsilon(1e-10));
    }
}

TEST_CASE("dwell time from Jacobi's theorem") {
    std::mt19937_64 rng(31);
    const PhysicalContext ctx{1.0, 1.0, 1.0};
    const WellSpectrum s = solve_symmetric_levels(ctx, 50.0, 1.0);
    for (int i = 0; i < 10; ++i) {
        const Microstate ms = i == 0 ? make_microstate(1.0, 1.0, 0.0) : oracle::random_microstate(rng);
        for (const WellLevel& l : s.levels) {
            const PhysicalContext c = on_shell(ctx, l);
            for (int side : {1, -1}) {
                CHECK(oracle::rel(dwell_time_jacobi(c, 50.0, ms, side), dwell_time(c, l, ms, side)) < 1e-6);
                CHECK(oracle::rel(exterior_action_quadrature(c, 50.0, ms, side), exterior_action(c, 50.0, ms, side)) < 1e-11);
            }
        }
    }
}

TEST_CASE("dwell time from the integrated forbidden-region trajectory") {
    const PhysicalContext ctx{1.0, 1.0, 1.0};
    const Microstate cl = make_microstate(1.0, 1.0, 0.0);
    const WellLevel g = solve_symmetric_levels(ctx, 50.0, 1.0).levels[0];
    const PhysicalContext c = on_shell(ctx, g);
    const double h = 1e-4 * c.E;
    auto action = [&](double E) {
        PhysicalContext shifted = c;
        shifted.E = E;
        return exterior_action_quadrature(shifted, 50.0, cl, 1);
    };
    const double t = 2.0 * (action(c.E + h) - action(c.E - h)) / (2.0 * h);
    CHECK(oracle::rel(t, dwell_time(c, g, cl, 1)) < 1e-6);
}

TEST_CASE("trajectory time accounts for dwell and libration") {
    std::mt19937_64 rng(37);
    const PhysicalContext ctx{1.0, 1.0, 1.0};
    const double U = 30.0, q = 1.2;
    const WellSpectrum s = solve_symmetric_levels(ctx, U, q);
    for (int i = 0; i < 5; ++i) {
        const Microstate ms = oracle::random_microstate(rng);
        for (const WellLevel& l : s.levels) {
            const PhysicalContext c = on_shell(ctx, l);
            const double far = q + 35.0 / l.kappa;
            const double t_plus = 2.0 * (square_well_time(c, U, q, ms, far) - square_well_time(c, U, q, ms, q));
            const double t_minus = 2.0 * (square_well_time(c, U, q, ms, -q) - square_well_time(c, U, q, ms, -far));
            CHECK(oracle::rel(t_plus, dwell_time(c, l, ms, 1)) < 1e-6);
            CHECK(oracle::rel(t_minus, dwell_time(c, l, ms, -1)) < 1e-6);
            const double crossing = square_well_time(c, U, q, ms, q) - square_well_time(c, U, q, ms, -q);
            CHECK(oracle::rel(2.0 * crossing + dwell_time(c, l, ms, 1) + dwell_time(c, l, ms, -1),
                              libration_period(c, l, ms, q)) < 1e-12);
        }
    }
}

}
