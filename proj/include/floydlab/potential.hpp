#pragma once

#include <string>
#include <variant>

namespace floydlab {

struct FreePotential {};

// V = U for |x| >= q, 0 inside.
struct SquareWellPotential {
    double U = 0.0;
    double q = 0.0;
};

// V = f x, constant force f > 0 pointing towards -x.
struct LinearPotential {
    double f = 0.0;
};

using Potential = std::variant<FreePotential, SquareWellPotential, LinearPotential>;

/// Throws DomainError when the parameters violate U > 0, q > 0 or f > 0.
void validate(const Potential& potential);

double potential_value(const Potential& potential, double x);

/// dV/dx away from interfaces; the square well reports 0 everywhere.
double potential_slope(const Potential& potential, double x);

std::string potential_name(const Potential& potential);

}  // namespace floydlab
