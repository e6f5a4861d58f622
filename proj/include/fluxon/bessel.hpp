#pragma once

namespace fluxon {

// First-kind Bessel function of real non-negative (possibly fractional) order.
// Ascending series for small argument, Miller backward recurrence with the
// (x/2)^mu = sum_k (mu+2k) Gamma(mu+k)/k! J_{mu+2k}(x) normalization otherwise.
// Domain: nu in [0, 200], x in [0, 1e4]; absolute error <= 1e-10 for x <= 100.
double bessel_j(double nu, double x);

struct BesselPair {
    double j_nu;       // J_nu(x)
    double j_nu_plus;  // J_{nu+1}(x)
};

BesselPair bessel_j_pair(double nu, double x);

// d/dx J_nu(x) = (nu/x) J_nu - J_{nu+1}; requires x > 0.
double bessel_j_prime(double nu, double x);

// k-th positive zero j_{nu,k}. Starting guesses come from the McMahon
// expansion (argument well past the order) or the Airy-based uniform
// expansion (order-dominated regime), then Newton refinement on bessel_j.
// Domain: nu in [0, 200], k in [1, 1e4]; relative error <= 1e-10.
double bessel_zero(double nu, int k);

}  // namespace fluxon
