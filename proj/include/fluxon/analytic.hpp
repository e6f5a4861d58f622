#pragma once

#include <array>

#include "fluxon/units.hpp"

namespace fluxon::analytic {

// A flux line: transverse position (cm) and flux fraction alpha in units of
// the single-charge flux quantum.
struct FluxonSpec {
    std::array<double, 2> position{0.0, 0.0};
    double alpha = 0.0;
    void validate() const;  // throws std::domain_error on non-finite fields
};

// Transverse distance between two flux lines.
double separation(const FluxonSpec& a, const FluxonSpec& b);

// Every function below folds its flux fractions first, so all results are
// exactly periodic under alpha -> alpha + n and even under alpha -> -alpha.

// Energy shift of one +/-|l| level pair at frozen radius r:
// hbar^2 fold(alpha)^2 / (2 m r^2).
double pair_shift(double alpha, double r, const PhysicalParams& p);

// Per-layer cost of inserting one flux line at the center of a disk of
// radius R: (pi/2) fold(alpha)^2 n2 hbar^2/(2m) ln(R/a0). Requires R > a0.
double insertion_energy(double alpha, double big_r, const PhysicalParams& p);

// Per-layer interaction of a semi-fluxon pair at separation a:
// xi (pi/16) n2 hbar^2/m ln(a/a0). Requires a > a0.
double two_fluxon_energy(double a, double xi, const PhysicalParams& p);
double two_fluxon_energy(const FluxonSpec& f1, const FluxonSpec& f2, double xi,
                         const PhysicalParams& p);

// Force per unit fluxon length between the semi-fluxon pair, using the true
// three-dimensional density: xi (pi/16) n3 hbar^2/m (1/a), in dyne/cm.
double force_per_length(double a, double xi, double n3, const PhysicalParams& p);

// Alternative estimate used for the superconducting medium, with coefficient
// n3 hbar^2/(2m) instead of (pi/16) n3 hbar^2/m. Both are reported; the two
// differ by the constant factor 8/pi and are never reconciled silently.
double force_per_length_sc_form(double a, double n3, const PhysicalParams& p);

enum class Regime { Attractive, Repulsive, Marginal };

struct PairRegime {
    Regime regime;
    double overlap_energy_coeff;    // fold(a1 + a2)^2
    double separated_energy_coeff;  // fold(a1)^2 + fold(a2)^2
    double folded_sum;              // fold(a1) + fold(a2), classification variable
};

// Attraction criterion for two positive flux fractions: merging wins when the
// folded fractions sum past 1/2, repulsion below, marginal exactly at 1/2.
PairRegime pair_regime(double alpha1, double alpha2);
PairRegime pair_regime(const FluxonSpec& f1, const FluxonSpec& f2);

const char* regime_name(Regime r);

// Unit prefactor by convention; the condensate functional fixes only the
// functional form. Exposed so callers can recalibrate.
inline constexpr double lg_prefactor = 1.0;

// Condensate (order-parameter) cost of an improperly quantized flux line:
// fold(alpha)^2 phi0^2 ln(R/R0). Requires R > R0 > 0.
double lg_condensate_energy(double alpha, double big_r, double r0, double phi0);

struct CasimirRatio {
    double exact;           // force_per_length(a,1,n3) / (hbar c / a^3)
    double order_estimate;  // alpha_em a^2 / a_Bohr^2, the n3 = a_Bohr^-3
                            // order-of-magnitude form without the pi/16
};

CasimirRatio casimir_ratio(double a, double n3, const PhysicalParams& p);

}  // namespace fluxon::analytic
