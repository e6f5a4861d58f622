#pragma once

namespace fluxon {

// Decaying modified Bessel functions of order 0 and 1 for x > 0.
// Power series up to x = 12, large-argument asymptotic series beyond; worst
// relative error ~3e-10 near the crossover, far better elsewhere.
double bessel_k0(double x);
double bessel_k1(double x);

}  // namespace fluxon
