#pragma once

#include <cstddef>
#include <functional>

namespace floydlab {

using RealFunction = std::function<double(double)>;

// ---------------------------------------------------------------------------
// Airy functions
// ---------------------------------------------------------------------------

struct AiryValues {
    double ai = 0.0;
    double bi = 0.0;
    double ai_prime = 0.0;
    double bi_prime = 0.0;
};

/// Ai, Bi and their derivatives for real z with |z| <= 200.
///
/// Asymptotic expansions are used for |z| >= 9. Inside that window the
/// values come from a Taylor re-expansion about the nearest node of a
/// 0.5-spaced table; the table itself is generated once by Taylor stepping
/// the Airy equation outward from z = 0 (Bi, and Ai for z < 0) and inward
/// from z = 9 (Ai for z > 0), so every march runs in a stable direction.
///
/// Throws DomainError for non-finite z or |z| > 200, OverflowError when Bi(z)
/// is not representable.
AiryValues airy_eval(double z);

/// Maclaurin series in extended precision. Accurate for moderate |z| only.
AiryValues airy_maclaurin(double z);

/// Asymptotic expansions truncated at the smallest term. Accurate for
/// large |z|; requires |z| >= 1.
AiryValues airy_asymptotic(double z);

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

enum class QuadratureRule { PeriodicTrapezoid, GaussKronrod15 };

struct Quadrature {
    QuadratureRule rule = QuadratureRule::PeriodicTrapezoid;
    std::size_t n_points = 32;  // initial panel / point count, at least 16
    double tol = 1e-10;         // relative tolerance, > 0
    std::size_t max_points = std::size_t{1} << 20;
};

/// Throws DomainError unless n_points >= 16 and tol > 0.
void validate(const Quadrature& quad);

/// (1/period) * integral over [start, start + period] of f(x)^order, order 1 or 2,
/// for a smooth periodic f. Equispaced trapezoid with repeated doubling.
/// Throws QuadratureError if the tolerance is not met within max_points.
double cycle_average(const RealFunction& f, double period, int order,
                     const Quadrature& quad = {}, double start = 0.0);

/// Adaptive Gauss-Kronrod (7/15) integral over [lo, hi].
/// Throws QuadratureError when the error budget cannot be met.
double integrate(const RealFunction& f, double lo, double hi, double rel_tol = 1e-12,
                 double abs_tol = 0.0);

// ---------------------------------------------------------------------------
// Finite differences and roots
// ---------------------------------------------------------------------------

struct DerivativeEstimate {
    double value = 0.0;
    double error = 0.0;
};

/// Five-point central stencil for derivative orders 1 and 2 (O(h^4)), four-
/// point central stencil for order 3 (O(h^2)), each Richardson-extrapolated
/// from steps h and h/2. A non-positive h selects the default for the order:
/// max(1e-5, 1e-5 |x|) for order 1, 1e-3 and 1e-2 (times max(1, |x|)) for
/// orders 2 and 3. Throws DomainError for order outside 1..3, StepError when
/// h/2 vanishes against |x|.
DerivativeEstimate numeric_derivative(const RealFunction& f, double x, int order, double h = 0.0);

/// Root of f in [lo, hi] bracketed to width <= tol (Brent: secant and inverse
/// quadratic steps safeguarded by bisection).
/// Throws BracketError if f(lo) and f(hi) have the same strict sign.
double find_root(const RealFunction& f, double lo, double hi, double tol = 1e-14);

}  // namespace floydlab
