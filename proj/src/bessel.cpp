#include "fluxon/bessel.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fluxon/constants.hpp"
#include "fluxon/errors.hpp"

namespace fluxon {

namespace {

constexpr double kNuMax = 200.0;
constexpr double kXMax = 1.0e4;
constexpr int kZeroKMax = 10000;
constexpr double kRescale = 1.0e250;

void check_domain(double nu, double x) {
    if (!(nu >= 0.0) || nu > kNuMax)
        throw std::domain_error("bessel_j: order must lie in [0, 200]");
    if (!(x >= 0.0) || x > kXMax)
        throw std::domain_error("bessel_j: argument must lie in [0, 1e4]");
}

// Ascending series J_nu(x) = sum_k (-1)^k (x/2)^{nu+2k} / (k! Gamma(nu+k+1)).
// Safe when terms decrease from the start (q <= nu+1) or x is small enough
// that alternating cancellation stays below ~1e-12 absolute.
double series_j(double nu, double x) {
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
    const double q = 0.25 * x * x;
    double term = std::exp(nu * std::log(0.5 * x) - std::lgamma(nu + 1.0));
    double sum = term;
    for (int k = 0; k < 400; ++k) {
        term *= -q / ((k + 1.0) * (nu + k + 1.0));
        sum += term;
        if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-300)) break;
    }
    return sum;
}

bool series_applicable(double nu, double x) {
    return x <= 9.0 || 0.25 * x * x <= nu + 1.0;
}

// Backward (Miller) recurrence from well above max(nu, x); the fractional
// normalization identity fixes the overall scale.
BesselPair miller_pair(double nu, double x) {
    const int n = static_cast<int>(std::floor(nu));
    const double mu = nu - n;

    const double top = std::max(x, nu);
    const int buffer = 22 + static_cast<int>(8.0 * std::cbrt(std::max(top, 1.0)));
    const int m_start = static_cast<int>(std::ceil(top)) + buffer;

    double j_hi = 0.0;           // J_{mu + m_start + 1}
    double j_lo = 1.0e-280;      // J_{mu + m_start}
    double cap_n = 0.0, cap_n1 = 0.0;
    bool have_n = false, have_n1 = false;

    // Normalization sum: accumulate c_k * J_{mu+2k} while descending.
    // Coefficients are generated downward from k_top via the ratio
    // c_k / c_{k-1} = (mu+2k)(mu+k-1) / ((mu+2k-2) k).
    const int k_top = m_start / 2;
    double coeff;
    if (mu == 0.0) {
        coeff = 2.0;  // c_k = 2 for k >= 1, c_0 = 1
    } else {
        coeff = std::exp(std::log(mu + 2.0 * k_top) + std::lgamma(mu + k_top) -
                         std::lgamma(k_top + 1.0));
    }
    int k_next = k_top;  // next even index (from above) whose term is pending
    double norm_sum = 0.0;

    for (int m = m_start; m >= 0; --m) {
        // j_lo currently holds J_{mu+m}.
        if (m == n + 1) {
            cap_n1 = j_lo;
            have_n1 = true;
        }
        if (m == n) {
            cap_n = j_lo;
            have_n = true;
        }
        if (m == 2 * k_next) {
            norm_sum += coeff * j_lo;
            if (k_next >= 1) {
                if (mu == 0.0) {
                    if (k_next == 1) coeff = 1.0;  // c_0
                } else {
                    coeff *= (mu + 2.0 * k_next - 2.0) * k_next /
                             ((mu + 2.0 * k_next) * (mu + k_next - 1.0));
                }
            }
            --k_next;
        }
        if (m > 0) {
            const double order = mu + m;
            double j_prev = (2.0 * order / x) * j_lo - j_hi;
            j_hi = j_lo;
            j_lo = j_prev;
            if (std::abs(j_lo) > kRescale) {
                j_lo /= kRescale;
                j_hi /= kRescale;
                norm_sum /= kRescale;
                if (have_n) cap_n /= kRescale;
                if (have_n1) cap_n1 /= kRescale;
            }
        }
    }

    const double scale = std::pow(0.5 * x, mu) / norm_sum;
    return BesselPair{cap_n * scale, cap_n1 * scale};
}

// --- zero location -------------------------------------------------------

// Magnitude of the k-th negative zero of Airy Ai.
double airy_zero_mag(int k) {
    const double t = 3.0 * constants::pi * (4.0 * k - 1.0) / 8.0;
    const double u = 1.0 / (t * t);
    return std::pow(t, 2.0 / 3.0) *
           (1.0 + u * (5.0 / 48.0 + u * (-5.0 / 36.0 + u * (77125.0 / 82944.0 +
                        u * (-108056875.0 / 6967296.0)))));
}

// Solve sqrt(z^2-1) - arccos(1/z) = c for z >= 1 (monotone increasing).
double solve_turning_ratio(double c) {
    double z;
    if (c < 1.0) {
        z = 1.0 + std::pow(1.5 * c / std::sqrt(2.0), 2.0 / 3.0);
    } else {
        z = c + constants::pi / 2.0;
    }
    for (int it = 0; it < 80; ++it) {
        const double s = std::sqrt(std::max(z * z - 1.0, 1e-300));
        const double f = s - std::acos(1.0 / z) - c;
        const double df = s / z;
        double step = f / df;
        if (z - step <= 1.0) step = (z - 1.0) / 2.0;
        z -= step;
        if (std::abs(step) < 1e-14 * z) break;
    }
    return z;
}

double mcmahon_guess(double nu, int k) {
    const double beta = (k + 0.5 * nu - 0.25) * constants::pi;
    const double mu = 4.0 * nu * nu;
    const double b8 = 8.0 * beta;
    const double c1 = (mu - 1.0) / b8;
    const double c2 = 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8 * b8 * b8);
    const double c3 = 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) /
                      (15.0 * std::pow(b8, 5));
    return beta - c1 - c2 - c3;
}

double olver_guess(double nu, int k) {
    const double a = airy_zero_mag(k);
    const double c = (2.0 / 3.0) * std::pow(a, 1.5) / nu;
    return nu * solve_turning_ratio(c);
}

// Local spacing of consecutive zeros near x (>= pi, grows toward the turning point).
double zero_spacing(double nu, double x) {
    const double ratio = nu / std::max(x, nu + 1e-6);
    const double s = std::sqrt(std::max(1.0 - ratio * ratio, 0.04));
    return std::min(constants::pi / s, 5.0 * constants::pi);
}

}  // namespace

namespace {

// Internal evaluation without the public argument cap; the zero finder needs
// J beyond x = 1e4 to polish high-index roots.
BesselPair pair_uncapped(double nu, double x) {
    if (x == 0.0) return BesselPair{nu == 0.0 ? 1.0 : 0.0, 0.0};
    if (series_applicable(nu, x)) {
        return BesselPair{series_j(nu, x), series_j(nu + 1.0, x)};
    }
    return miller_pair(nu, x);
}

}  // namespace

double bessel_j(double nu, double x) { return bessel_j_pair(nu, x).j_nu; }

BesselPair bessel_j_pair(double nu, double x) {
    check_domain(nu, x);
    return pair_uncapped(nu, x);
}

double bessel_j_prime(double nu, double x) {
    if (!(x > 0.0)) throw std::domain_error("bessel_j_prime: requires x > 0");
    const BesselPair p = bessel_j_pair(nu, x);
    return (nu / x) * p.j_nu - p.j_nu_plus;
}

double bessel_zero(double nu, int k) {
    if (!(nu >= 0.0) || nu > kNuMax)
        throw std::domain_error("bessel_zero: order must lie in [0, 200]");
    if (k < 1 || k > kZeroKMax)
        throw std::domain_error("bessel_zero: index must lie in [1, 1e4]");

    const double beta = (k + 0.5 * nu - 0.25) * constants::pi;
    double guess = (beta >= 2.5 * nu || nu < 1.5) ? mcmahon_guess(nu, k)
                                                  : olver_guess(nu, k);
    const double spacing = zero_spacing(nu, guess);

    // Newton refinement with a step clamp; zeros of J_nu are simple, so this
    // converges fast from the expansion guesses.
    double x = guess;
    bool converged = false;
    for (int it = 0; it < 40; ++it) {
        const BesselPair p = pair_uncapped(nu, x);
        const double deriv = (nu / x) * p.j_nu - p.j_nu_plus;
        if (deriv == 0.0) break;
        double step = p.j_nu / deriv;
        const double cap = 0.5 * spacing;
        if (std::abs(step) > cap) step = std::copysign(cap, step);
        x -= step;
        if (x <= 0.0) x = 0.5 * (x + step);  // stay positive
        if (std::abs(step) < 1e-13 * x) {
            converged = true;
            break;
        }
    }

    if (!converged || std::abs(x - guess) > 1.2 * spacing) {
        // Bracket the zero nearest the guess by marching, then bisect.
        const double lo_lim = std::max(guess - 2.0 * spacing, nu > 0.0 ? nu : 1e-8);
        double a = lo_lim;
        double fa = pair_uncapped(nu, a).j_nu;
        double b = a;
        bool bracketed = false;
        for (int i = 1; i <= 60; ++i) {
            b = lo_lim + i * (spacing / 6.0);
            const double fb = pair_uncapped(nu, b).j_nu;
            if (fa == 0.0) return a;
            if (fa * fb < 0.0) {
                bracketed = true;
                break;
            }
            a = b;
            fa = fb;
        }
        if (!bracketed) {
            std::ostringstream msg;
            msg << "bessel_zero: bracket failure for nu=" << nu << ", k=" << k
                << " (guess " << guess << ")";
            throw NumericError(msg.str());
        }
        for (int i = 0; i < 200 && (b - a) > 1e-14 * b; ++i) {
            const double m = 0.5 * (a + b);
            const double fm = pair_uncapped(nu, m).j_nu;
            if (fa * fm <= 0.0) {
                b = m;
            } else {
                a = m;
                fa = fm;
            }
        }
        x = 0.5 * (a + b);
    }
    return x;
}

}  // namespace fluxon
