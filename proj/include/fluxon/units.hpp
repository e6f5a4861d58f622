#pragma once

#include <string_view>

namespace fluxon {

// Reduce a flux fraction to the physically distinct interval [0, 1/2].
// Flux is periodic under alpha -> alpha + n and time reversal flips its sign,
// so the energetics depend only on the distance of alpha to the nearest integer.
double fold_alpha(double alpha);

enum class Quantity { Length, Energy, ForcePerLength, MagneticField };

// Accepts "length", "energy", "force-per-length", "magnetic-field".
Quantity parse_quantity(std::string_view name);

// Particle species plus medium densities, in Gaussian CGS unless the natural()
// factory is used (hbar = mass = spacing = light_speed = 1).
struct PhysicalParams {
    double mass;         // g
    double charge;       // esu
    double density2d;    // cm^-2 (one-layer density n2)
    double density3d;    // cm^-3 (n)
    double spacing;      // cm    (inter-particle distance a0)
    double hbar;         // erg s
    double light_speed;  // cm/s

    // Natural spectral units: hbar = m = a0 = 1.
    static PhysicalParams natural(double n2 = 1.0, double n3 = 1.0);

    // Electron medium in CGS; spacing defaults to n2^{-1/2}. The n2 ~ a0^-2
    // relation is order-of-magnitude, so callers may override spacing.
    static PhysicalParams electron_gas(double n2, double n3);

    void validate() const;  // throws std::domain_error on non-positive fields

    // density2d * spacing^2; reported for diagnostics, never enforced.
    double density_consistency() const { return density2d * spacing * spacing; }

    // CGS magnitude of one natural unit of the given quantity.
    double unit_of(Quantity q) const;
};

double to_natural(const PhysicalParams& p, double value, Quantity q);
double from_natural(const PhysicalParams& p, double value, Quantity q);

}  // namespace fluxon
