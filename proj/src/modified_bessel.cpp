#include "fluxon/modified_bessel.hpp"

#include <cmath>
#include <stdexcept>

#include "fluxon/constants.hpp"

namespace fluxon {

namespace {

using constants::euler_gamma;

double k_asymptotic(int order, double x) {
    // K_nu(x) ~ sqrt(pi/2x) e^{-x} sum_k a_k, a_k = a_{k-1} (4nu^2-(2k-1)^2)/(8xk).
    const double mu = 4.0 * order * order;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= 60; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double next = term * (mu - odd * odd) / (8.0 * x * k);
        if (std::abs(next) >= std::abs(term)) break;  // asymptotic tail turned
        term = next;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return std::sqrt(constants::pi / (2.0 * x)) * std::exp(-x) * sum;
}

}  // namespace

double bessel_k0(double x) {
    if (!(x > 0.0)) throw std::domain_error("bessel_k0: requires x > 0");
    if (x > 12.0) return k_asymptotic(0, x);
    // K0 = -(ln(x/2)+gamma) I0 + sum_{k>=1} H_k (x^2/4)^k / (k!)^2
    const double q = 0.25 * x * x;
    const double lg = std::log(0.5 * x) + euler_gamma;
    double i_term = 1.0, i0 = 1.0;
    double h = 0.0, corr = 0.0;
    for (int k = 1; k <= 80; ++k) {
        i_term *= q / (static_cast<double>(k) * k);
        i0 += i_term;
        h += 1.0 / k;
        corr += i_term * h;
        if (i_term < 1e-18 * i0) break;
    }
    return -lg * i0 + corr;
}

double bessel_k1(double x) {
    if (!(x > 0.0)) throw std::domain_error("bessel_k1: requires x > 0");
    if (x > 12.0) return k_asymptotic(1, x);
    // K1 = ln(x/2) I1 + 1/x - (x/4) sum_k (psi(k+1)+psi(k+2)) (x^2/4)^k / (k!(k+1)!)
    const double q = 0.25 * x * x;
    double i_term = 1.0;  // (x^2/4)^k / (k! (k+1)!)
    double i1_sum = 1.0;
    double psi_a = -euler_gamma;        // psi(1)
    double psi_b = 1.0 - euler_gamma;   // psi(2)
    double corr = psi_a + psi_b;
    double corr_sum = corr;
    for (int k = 1; k <= 80; ++k) {
        i_term *= q / (static_cast<double>(k) * (k + 1.0));
        i1_sum += i_term;
        psi_a += 1.0 / k;
        psi_b += 1.0 / (k + 1.0);
        corr_sum += i_term * (psi_a + psi_b);
        if (i_term < 1e-18 * i1_sum) break;
    }
    const double i1 = 0.5 * x * i1_sum;
    return std::log(0.5 * x) * i1 + 1.0 / x - 0.25 * x * corr_sum;
}

}  // namespace fluxon
