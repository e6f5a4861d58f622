#include "fluxon/units.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fluxon/constants.hpp"

namespace fluxon {

double fold_alpha(double alpha) {
    if (!std::isfinite(alpha)) throw std::domain_error("fold_alpha: non-finite flux fraction");
    double frac = std::fmod(alpha, 1.0);
    if (frac < 0.0) frac += 1.0;
    const double folded = std::min(frac, 1.0 - frac);
    return folded == 0.0 ? 0.0 : folded;  // normalize -0.0
}

Quantity parse_quantity(std::string_view name) {
    if (name == "length") return Quantity::Length;
    if (name == "energy") return Quantity::Energy;
    if (name == "force-per-length") return Quantity::ForcePerLength;
    if (name == "magnetic-field") return Quantity::MagneticField;
    throw std::domain_error("unknown quantity kind: " + std::string(name));
}

PhysicalParams PhysicalParams::natural(double n2, double n3) {
    PhysicalParams p{1.0, 1.0, n2, n3, 1.0, 1.0, 1.0};
    p.validate();
    return p;
}

PhysicalParams PhysicalParams::electron_gas(double n2, double n3) {
    PhysicalParams p{constants::electron_mass,
                     constants::electron_charge,
                     n2,
                     n3,
                     0.0,
                     constants::hbar,
                     constants::speed_of_light};
    if (!(n2 > 0.0)) throw std::domain_error("electron_gas: density2d must be positive");
    p.spacing = 1.0 / std::sqrt(n2);
    p.validate();
    return p;
}

void PhysicalParams::validate() const {
    auto check = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::domain_error(std::string("PhysicalParams: ") + name +
                                    " must be positive and finite");
    };
    check(mass, "mass");
    check(charge, "charge");
    check(density2d, "density2d");
    check(density3d, "density3d");
    check(spacing, "spacing");
    check(hbar, "hbar");
    check(light_speed, "light_speed");
}

double PhysicalParams::unit_of(Quantity q) const {
    const double a0 = spacing;
    switch (q) {
        case Quantity::Length:
            return a0;
        case Quantity::Energy:
            return hbar * hbar / (mass * a0 * a0);
        case Quantity::ForcePerLength:
            return hbar * hbar / (mass * a0 * a0 * a0 * a0);
        case Quantity::MagneticField:
            // One flux quantum threading an a0 x a0 cell.
            return 2.0 * constants::pi * hbar * light_speed / (charge * a0 * a0);
    }
    throw std::domain_error("unit_of: unknown quantity kind");
}

double to_natural(const PhysicalParams& p, double value, Quantity q) {
    return value / p.unit_of(q);
}

double from_natural(const PhysicalParams& p, double value, Quantity q) {
    return value * p.unit_of(q);
}

}  // namespace fluxon
