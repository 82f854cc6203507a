#include <cmath>
#include <numbers>

#include "doctest.h"
#include "floydlab/errors.hpp"
#include "floydlab/specfun.hpp"
#include "support/oracles.hpp"

using namespace floydlab;

namespace {

// 30-digit values from an arbitrary-precision library: z, Ai, Ai', Bi, Bi'.
struct AiryRef {
    double z, ai, aip, bi, bip;
};

const AiryRef kAiry[] = {
    {-200, 0.14889394248381025115, -0.26000664543340602276, 0.018398406342617793337, 2.105701367289785444},
    {-30, -0.087968188456842162833, 1.2286206026374851347, -0.22444694220056631974, -0.48369472582768149277},
    {-10, 0.040241238486443190689, 0.9962650441327900559, -0.31467982964383863316, 0.11941411339990923828},
    {-7.5, 0.32177571638064787527, 0.31880950669855459621, -0.11246348507649080638, 0.87780228154576092237},
    {-5, 0.35076100902411431979, 0.32719281855444313679, -0.13836913490160057685, 0.77841177300189924609},
    {-2.2, 0.0961453780076688799, 0.6862448249090017474, -0.45036098416820732951, 0.096229185938564354774},
    {0.7, 0.18916240039815008218, -0.19985119158228048105, 0.97332865587816590762, 0.65440591917214000003},
    {3, 0.0065911393574607191443, -0.011912976705951318474, 14.037328963730232032, 22.922214966382170185},
    {5.5, 3.3685311908599814425e-5, -8.046339130556514338e-5, 2016.5800386595313944, 4632.5537331390424205},
    {8, 4.6922076160992316256e-8, -1.3414392979067865743e-7, 1199586.0041244599309, 3354342.3127445388765},
    {10, 1.1047532552898685934e-10, -3.5206336767389236366e-10, 455641153.548225141, 1429236134.4828657761},
    {25, 8.1160268246913866838e-38, -4.0660893372432810053e-37, 3.9220307780413817738e35, 1.957073508323330897e36},
    {60, 2.7831487094969355371e-136, -2.1569758112094737872e-135, 7.3825841915430987895e133, 5.7154448983354510182e134},
    {100, 2.6344821520881844896e-291, -2.6351403616044099336e-290, 6.041223996670201399e288, 6.0397127453106029094e289},
};

}  // namespace

TEST_SUITE("specfun") {

TEST_CASE("airy values match high-precision references") {
    for (const AiryRef& r : kAiry) {
        CAPTURE(r.z);
        const AiryValues v = airy_eval(r.z);
        CHECK(oracle::rel(v.ai, r.ai) < 1e-12);
        CHECK(oracle::rel(v.ai_prime, r.aip) < 1e-12);
        CHECK(oracle::rel(v.bi, r.bi) < 1e-12);
        CHECK(oracle::rel(v.bi_prime, r.bip) < 1e-12);
    }
}

TEST_CASE("airy values at the origin") {
    const double g13 = std::tgamma(1.0 / 3.0), g23 = std::tgamma(2.0 / 3.0);
    const AiryValues v = airy_eval(0.0);
    CHECK(oracle::rel(v.ai, 1.0 / (std::pow(3.0, 2.0 / 3.0) * g23)) < 1e-14);
    CHECK(oracle::rel(v.bi, 1.0 / (std::pow(3.0, 1.0 / 6.0) * g23)) < 1e-14);
    CHECK(oracle::rel(v.ai_prime, -1.0 / (std::cbrt(3.0) * g13)) < 1e-14);
    CHECK(oracle::rel(v.bi_prime, std::pow(3.0, 1.0 / 6.0) / g13) < 1e-14);
}

TEST_CASE("airy agrees with the extended-precision series oracle") {
    for (double z = -6.0; z <= 3.0; z += 0.137) {
        CAPTURE(z);
        const oracle::Airy o = oracle::airy_series(z);
        const AiryValues v = airy_eval(z);
        const double scale_a = std::hypot(static_cast<double>(o.ai), static_cast<double>(o.bi));
        CHECK(std::fabs(v.ai - static_cast<double>(o.ai)) < 1e-13 * scale_a);
        CHECK(std::fabs(v.bi - static_cast<double>(o.bi)) < 1e-13 * scale_a);
        CHECK(std::fabs(v.ai_prime - static_cast<double>(o.ai_prime)) < 1e-12 * (1 + std::fabs(z)) * scale_a);
        CHECK(std::fabs(v.bi_prime - static_cast<double>(o.bi_prime)) < 1e-12 * (1 + std::fabs(z)) * scale_a);
    }
}

TEST_CASE("airy branches overlap") {
    for (double z : {-12.0, -9.5, 9.5, 12.0}) {
        CAPTURE(z);
        const AiryValues a = airy_asymptotic(z);
        const AiryValues e = airy_eval(z);
        CHECK(oracle::rel(a.bi, e.bi) < 1e-14);
        CHECK(oracle::rel(a.ai, e.ai) < 1e-14);
    }
    for (double z : {-4.0, -1.0, 0.5, 2.0}) {
        CAPTURE(z);
        const AiryValues m = airy_maclaurin(z);
        const AiryValues e = airy_eval(z);
        CHECK(oracle::rel(m.bi, e.bi) < 1e-14);
        CHECK(oracle::rel(m.ai, e.ai) < 1e-13);
    }
}

TEST_CASE("airy wronskian is 1/pi") {
    double worst = 0.0;
    for (double z = -200.0; z <= 100.0; z += 0.0731) {
        const AiryValues v = airy_eval(z);
        const double w = v.ai * v.bi_prime - v.ai_prime * v.bi;
        const double scale = std::fabs(v.ai * v.bi_prime) + std::fabs(v.ai_prime * v.bi);
        worst = std::max(worst, std::fabs(w - 1.0 / std::numbers::pi) / std::max(scale, 1.0 / std::numbers::pi));
    }
    CHECK(worst < 1e-13);
}

TEST_CASE("airy rejects out-of-range arguments") {
    CHECK_THROWS_AS(airy_eval(250.0), DomainError);
    CHECK_THROWS_AS(airy_eval(-201.0), DomainError);
    CHECK_THROWS_AS(airy_eval(std::nan("")), DomainError);
}

TEST_CASE("cycle_average of the cosine denominator") {
    const double A = 2.0, B = 1.5, period = 2.0 * std::numbers::pi;
    auto f = [&](double x) { return 1.0 / (A + B * std::cos(x)); };
    CHECK(oracle::rel(cycle_average(f, period, 1), 1.0 / std::sqrt(A * A - B * B)) < 1e-12);
    CHECK(oracle::rel(cycle_average(f, period, 2), A / std::pow(A * A - B * B, 1.5)) < 1e-12);
    CHECK(oracle::rel(cycle_average(f, period, 1, {}, 0.77), 1.0 / std::sqrt(A * A - B * B)) < 1e-12);
}

TEST_CASE("cycle_average errors") {
    auto kink = [](double x) { return std::fabs(std::sin(x)); };
    Quadrature tight;
    tight.tol = 1e-15;
    tight.max_points = 64;
    CHECK_THROWS_AS(cycle_average(kink, std::numbers::pi, 1, tight), QuadratureError);
    Quadrature bad;
    bad.n_points = 4;
    CHECK_THROWS_AS(cycle_average(kink, 1.0, 1, bad), DomainError);
    CHECK_THROWS_AS(cycle_average(kink, 1.0, 3), DomainError);
}

TEST_CASE("adaptive integration") {
    CHECK(oracle::rel(integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-12), 2.0 / 3.0) < 1e-11);
    CHECK(oracle::rel(integrate([](double x) { return std::exp(-x); }, 0.0, 40.0), 1.0 - std::exp(-40.0)) < 1e-13);
    const double peaked = integrate([](double x) { return 1.0 / (1e-4 + x * x); }, -1.0, 1.0, 1e-12);
    CHECK(oracle::rel(peaked, 2.0 * std::atan(1e2) / 1e-2) < 1e-11);
    CHECK(oracle::rel(integrate([](double x) { return std::cos(x); }, 0.0, 1.0),
                      oracle::trapezoid([](double x) { return std::cos(x); }, 0.0, 1.0, 200000)) < 1e-10);
}

TEST_CASE("numeric_derivative orders") {
    auto f = [](double x) { return std::sin(x); };
    CHECK(std::fabs(numeric_derivative(f, 1.0, 1).value - std::cos(1.0)) < 1e-10);
    CHECK(std::fabs(numeric_derivative(f, 1.0, 2).value + std::sin(1.0)) < 1e-9);
    CHECK(std::fabs(numeric_derivative(f, 1.0, 3).value + std::cos(1.0)) < 1e-6);
    CHECK(numeric_derivative(f, 1.0, 1).error < 1e-8);
    CHECK_THROWS_AS(numeric_derivative(f, 1.0, 4), DomainError);
    CHECK_THROWS_AS(numeric_derivative(f, 1e300, 1, 1e-300), StepError);
}

TEST_CASE("find_root") {
    auto f = [](double x) { return std::cos(x); };
    CHECK(std::fabs(find_root(f, 0.0, 2.0) - std::numbers::pi / 2) < 1e-14);
    const double r = find_root([](double x) { return x * x * x - 2.0; }, 0.0, 5.0);
    CHECK(std::fabs(r - std::cbrt(2.0)) < 1e-14);
    CHECK(std::fabs(r - oracle::bisect([](double x) { return x * x * x - 2.0; }, 0.0, 5.0)) < 1e-14);
    CHECK_THROWS_AS(find_root(f, 2.0, 4.0), BracketError);
}

}
