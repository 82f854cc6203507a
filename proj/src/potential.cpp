#include "floydlab/potential.hpp"

#include <cmath>

#include "floydlab/errors.hpp"

namespace floydlab {

namespace {
template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;
}  // namespace

void validate(const Potential& potential) {
    std::visit(Overloaded{
                   [](const FreePotential&) {},
                   [](const SquareWellPotential& p) {
                       if (!(p.U > 0.0) || !(p.q > 0.0) || !std::isfinite(p.U) ||
                           !std::isfinite(p.q)) {
                           throw DomainError("square well requires U > 0 and q > 0");
                       }
                   },
                   [](const LinearPotential& p) {
                       if (!(p.f > 0.0) || !std::isfinite(p.f)) {
                           throw DomainError("linear potential requires f > 0");
                       }
                   },
               },
               potential);
}

double potential_value(const Potential& potential, double x) {
    return std::visit(Overloaded{
                          [](const FreePotential&) { return 0.0; },
                          [x](const SquareWellPotential& p) { return std::fabs(x) >= p.q ? p.U : 0.0; },
                          [x](const LinearPotential& p) { return p.f * x; },
                      },
                      potential);
}

double potential_slope(const Potential& potential, double) {
    if (const auto* lin = std::get_if<LinearPotential>(&potential)) return lin->f;
    return 0.0;
}

std::string potential_name(const Potential& potential) {
    return std::visit(Overloaded{
                          [](const FreePotential&) { return std::string("free"); },
                          [](const SquareWellPotential&) { return std::string("square_well"); },
                          [](const LinearPotential&) { return std::string("linear"); },
                      },
                      potential);
}

}  // namespace floydlab
