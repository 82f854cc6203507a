#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <utility>

#include "floydlab/core_model.hpp"

// Reference implementations that share no code with the library.
namespace oracle {

struct Airy {
    long double ai, bi, ai_prime, bi_prime;
};

/// Power series about 0 in long double, summed term by term to convergence.
Airy airy_series(long double z);

/// Composite trapezoid with n panels.
double trapezoid(const std::function<double(double)>& f, double lo, double hi, long n);

/// Plain bisection to width tol.
double bisect(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-15);

/// Min and max of f over n + 1 equispaced samples of [lo, hi].
std::pair<double, double> grid_extremes(const std::function<double(double)>& f, double lo,
                                        double hi, long n);

/// Positive-definite (a, b, c) with a, b in [e^-1, e] and |c| < 1.9 (ab)^{1/2}.
floydlab::Microstate random_microstate(std::mt19937_64& rng);

double uniform(std::mt19937_64& rng, double lo, double hi);

/// Relative difference with a floor on the denominator.
double rel(double value, double reference, double floor = 0.0);

}  // namespace oracle
