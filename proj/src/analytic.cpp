#include "fluxon/analytic.hpp"

#include <cmath>
#include <stdexcept>

#include "fluxon/constants.hpp"

namespace fluxon::analytic {

using constants::pi;

void FluxonSpec::validate() const {
    if (!std::isfinite(position[0]) || !std::isfinite(position[1]) || !std::isfinite(alpha))
        throw std::domain_error("FluxonSpec: position and flux fraction must be finite");
}

double separation(const FluxonSpec& a, const FluxonSpec& b) {
    a.validate();
    b.validate();
    return std::hypot(a.position[0] - b.position[0], a.position[1] - b.position[1]);
}

double pair_shift(double alpha, double r, const PhysicalParams& p) {
    if (!(r > 0.0)) throw std::domain_error("pair_shift: radius must be positive");
    const double f = fold_alpha(alpha);
    return p.hbar * p.hbar * f * f / (2.0 * p.mass * r * r);
}

double insertion_energy(double alpha, double big_r, const PhysicalParams& p) {
    if (!(big_r > p.spacing))
        throw std::domain_error("insertion_energy: R must exceed the spacing cutoff a0");
    const double f = fold_alpha(alpha);
    return (pi / 2.0) * f * f * p.density2d * p.hbar * p.hbar / (2.0 * p.mass) *
           std::log(big_r / p.spacing);
}

double two_fluxon_energy(double a, double xi, const PhysicalParams& p) {
    if (!(a > p.spacing))
        throw std::domain_error("two_fluxon_energy: separation must exceed a0");
    return xi * (pi / 16.0) * p.density2d * p.hbar * p.hbar / p.mass * std::log(a / p.spacing);
}

double two_fluxon_energy(const FluxonSpec& f1, const FluxonSpec& f2, double xi,
                         const PhysicalParams& p) {
    return two_fluxon_energy(separation(f1, f2), xi, p);
}

double force_per_length(double a, double xi, double n3, const PhysicalParams& p) {
    if (!(a > 0.0)) throw std::domain_error("force_per_length: separation must be positive");
    if (!(n3 > 0.0)) throw std::domain_error("force_per_length: n3 must be positive");
    return xi * (pi / 16.0) * n3 * p.hbar * p.hbar / p.mass / a;
}

double force_per_length_sc_form(double a, double n3, const PhysicalParams& p) {
    if (!(a > 0.0)) throw std::domain_error("force_per_length_sc_form: separation must be positive");
    if (!(n3 > 0.0)) throw std::domain_error("force_per_length_sc_form: n3 must be positive");
    return n3 * p.hbar * p.hbar / (2.0 * p.mass) / a;
}

PairRegime pair_regime(double alpha1, double alpha2) {
    const double f1 = fold_alpha(alpha1);
    const double f2 = fold_alpha(alpha2);
    const double overlap = fold_alpha(alpha1 + alpha2);

    PairRegime r;
    r.overlap_energy_coeff = overlap * overlap;
    r.separated_energy_coeff = f1 * f1 + f2 * f2;
    r.folded_sum = f1 + f2;
    if (r.folded_sum > 0.5) {
        r.regime = Regime::Attractive;
    } else if (r.folded_sum < 0.5) {
        r.regime = Regime::Repulsive;
    } else {
        r.regime = Regime::Marginal;
    }
    return r;
}

PairRegime pair_regime(const FluxonSpec& f1, const FluxonSpec& f2) {
    f1.validate();
    f2.validate();
    return pair_regime(f1.alpha, f2.alpha);
}

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::Attractive: return "attractive";
        case Regime::Repulsive: return "repulsive";
        case Regime::Marginal: return "marginal";
    }
    return "unknown";
}

double lg_condensate_energy(double alpha, double big_r, double r0, double phi0) {
    if (!(r0 > 0.0) || !(big_r > r0))
        throw std::domain_error("lg_condensate_energy: requires R > R0 > 0");
    const double f = fold_alpha(alpha);
    return lg_prefactor * f * f * phi0 * phi0 * std::log(big_r / r0);
}

CasimirRatio casimir_ratio(double a, double n3, const PhysicalParams& p) {
    if (!(a > 0.0)) throw std::domain_error("casimir_ratio: separation must be positive");
    if (!(n3 > 0.0)) throw std::domain_error("casimir_ratio: n3 must be positive");
    const double f_top = force_per_length(a, 1.0, n3, p);
    const double f_cas = p.hbar * p.light_speed / (a * a * a);
    CasimirRatio r;
    r.exact = f_top / f_cas;
    r.order_estimate = constants::fine_structure * a * a /
                       (constants::bohr_radius * constants::bohr_radius);
    return r;
}

}  // namespace fluxon::analytic
