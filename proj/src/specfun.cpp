#include "floydlab/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "floydlab/errors.hpp"

namespace floydlab {

void validate(const Quadrature& quad) {
    if (quad.n_points < 16) {
        throw DomainError("quadrature: n_points must be at least 16");
    }
    if (!(quad.tol > 0.0)) {
        throw DomainError("quadrature: tol must be positive");
    }
}

double cycle_average(const RealFunction& f, double period, int order, const Quadrature& quad,
                     double start) {
    validate(quad);
    if (!(period > 0.0) || !std::isfinite(period)) {
        throw DomainError("cycle_average: period must be positive and finite");
    }
    if (order != 1 && order != 2) {
        throw DomainError("cycle_average: order must be 1 or 2");
    }
    auto g = [&](double x) {
        const double v = f(x);
        if (!std::isfinite(v)) {
            throw QuadratureError("cycle_average: integrand not finite at x = " + std::to_string(x));
        }
        return order == 1 ? v : v * v;
    };

    if (quad.rule == QuadratureRule::GaussKronrod15) {
        return integrate(g, start, start + period, quad.tol) / period;
    }

    // For a periodic integrand the trapezoid sum over a full period is the
    // plain mean of equispaced samples, and it converges geometrically.
    std::size_t n = quad.n_points;
    double sum = 0.0, abs_sum = 0.0;
    auto add = [&](double x) {
        const double v = g(x);
        sum += v;
        abs_sum += std::fabs(v);
    };
    for (std::size_t i = 0; i < n; ++i) add(start + period * static_cast<double>(i) / static_cast<double>(n));
    double mean = sum / static_cast<double>(n);
    double best_delta = std::numeric_limits<double>::infinity();
    int stalled = 0;
    while (2 * n <= quad.max_points) {
        for (std::size_t i = 0; i < n; ++i) {
            add(start + period * (static_cast<double>(2 * i + 1)) / static_cast<double>(2 * n));
        }
        n *= 2;
        const double refined = sum / static_cast<double>(n);
        const double delta = std::fabs(refined - mean);
        // Below the rounding floor of the sum the mean cannot improve further.
        const double floor = 64.0 * std::numeric_limits<double>::epsilon() * abs_sum / static_cast<double>(n);
        mean = refined;
        if (delta <= quad.tol * std::fabs(refined) || delta <= floor) return mean;
        // Smooth periodic data converge geometrically, so a difference that
        // stops shrinking is evaluation noise in f rather than truncation.
        if (delta < 0.5 * best_delta) {
            best_delta = delta;
            stalled = 0;
        } else if (n >= 256 && ++stalled >= 3) {
            return mean;
        }
    }
    throw QuadratureError("cycle_average: no convergence with " + std::to_string(quad.max_points) +
                          " points");
}

namespace {

constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd Kronrod nodes 1, 3, 5, 7.
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double lo, hi, value, error, magnitude;
    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment kronrod_segment(const RealFunction& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = f(center);
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGaussWeights[3];
    double magnitude = std::fabs(fc) * kKronrodWeights[7];
    for (std::size_t i = 0; i < 7; ++i) {
        const double dx = half * kKronrodNodes[i];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        kronrod += kKronrodWeights[i] * (f1 + f2);
        magnitude += kKronrodWeights[i] * (std::fabs(f1) + std::fabs(f2));
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * (f1 + f2);
    }
    if (!std::isfinite(kronrod)) {
        throw QuadratureError("integrate: integrand not finite on [" + std::to_string(lo) + ", " +
                              std::to_string(hi) + "]");
    }
    double error = std::fabs((kronrod - gauss) * half);
    // Below the rounding floor the Kronrod-Gauss difference carries no information.
    const double floor = 50.0 * std::numeric_limits<double>::epsilon() * magnitude * std::fabs(half);
    if (error < floor) error = 0.0;
    return {lo, hi, kronrod * half, error, magnitude * std::fabs(half)};
}

}  // namespace

double integrate(const RealFunction& f, double lo, double hi, double rel_tol, double abs_tol) {
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        throw DomainError("integrate: limits must be finite");
    }
    if (lo == hi) return 0.0;
    constexpr std::size_t kMaxSegments = 4000;
    std::vector<Segment> heap{kronrod_segment(f, lo, hi)};
    double total = heap.front().value;
    double error = heap.front().error;
    while (error > std::max(abs_tol, rel_tol * std::fabs(total))) {
        if (heap.size() >= kMaxSegments) {
            throw QuadratureError("integrate: error budget not met after " +
                                  std::to_string(kMaxSegments) + " segments");
        }
        std::pop_heap(heap.begin(), heap.end());
        const Segment worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.lo + worst.hi);
        heap.push_back(kronrod_segment(f, worst.lo, mid));
        std::push_heap(heap.begin(), heap.end());
        heap.push_back(kronrod_segment(f, mid, worst.hi));
        std::push_heap(heap.begin(), heap.end());
        // Re-sum rather than update incrementally so the result does not drift.
        total = 0.0;
        error = 0.0;
        for (const Segment& seg : heap) {
            total += seg.value;
            error += seg.error;
        }
    }
    return total;
}

namespace {

double stencil(const RealFunction& f, double x, int order, double h) {
    switch (order) {
        case 1:
            return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
        case 2:
            return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) /
                   (12 * h * h);
        default:
            return (f(x + 2 * h) - 2 * f(x + h) + 2 * f(x - h) - f(x - 2 * h)) / (2 * h * h * h);
    }
}

}  // namespace

DerivativeEstimate numeric_derivative(const RealFunction& f, double x, int order, double h) {
    if (order < 1 || order > 3) {
        throw DomainError("numeric_derivative: order must be 1, 2 or 3");
    }
    if (!(h > 0.0)) {
        const double ax = std::fabs(x);
        switch (order) {
            case 1: h = std::max(1e-5, 1e-5 * ax); break;
            case 2: h = 1e-3 * std::max(1.0, ax); break;
            default: h = 1e-2 * std::max(1.0, ax); break;
        }
    }
    const double half = 0.5 * h;
    if (!std::isfinite(h) || x + half == x ||
        half < 8.0 * std::numeric_limits<double>::epsilon() * std::fabs(x)) {
        throw StepError("numeric_derivative: step " + std::to_string(h) + " underflows at x = " +
                        std::to_string(x));
    }
    const double coarse = stencil(f, x, order, h);
    const double fine = stencil(f, x, order, half);
    // Leading error is O(h^4) for orders 1-2 and O(h^2) for order 3.
    const double factor = order == 3 ? 4.0 : 16.0;
    const double value = (factor * fine - coarse) / (factor - 1.0);
    return {value, std::fabs(value - fine)};
}

double find_root(const RealFunction& f, double lo, double hi, double tol) {
    double a = lo, b = hi;
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0)) {
        throw BracketError("find_root: no sign change on [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]");
    }
    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int iter = 0; iter < 500; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::fabs(b) + 0.5 * tol;
        const double m = 0.5 * (c - b);
        if (std::fabs(m) <= tol1 || fb == 0.0) return b;
        if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                const double qa = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::fabs(p);
            if (2.0 * p < std::min(3.0 * m * q - std::fabs(tol1 * q), std::fabs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += (std::fabs(d) > tol1) ? d : (m > 0.0 ? tol1 : -tol1);
        fb = f(b);
    }
    return b;
}

}  // namespace floydlab
