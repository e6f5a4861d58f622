#pragma once

#include <span>

namespace fluxon {

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;   // in [0, 1]; 1 for exactly collinear data
    double residual_max = 0.0;
};

// Ordinary least squares of ys against xs. Throws std::invalid_argument on
// length mismatch or fewer than two points, FitError when xs are all equal.
FitResult linear_fit(std::span<const double> xs, std::span<const double> ys);

}  // namespace fluxon
