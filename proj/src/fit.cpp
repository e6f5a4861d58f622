#include "fluxon/fit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fluxon/errors.hpp"

namespace fluxon {

FitResult linear_fit(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("linear_fit: length mismatch");
    if (xs.size() < 2) throw std::invalid_argument("linear_fit: need at least two points");

    const auto n = static_cast<double>(xs.size());
    double x_mean = 0.0, y_mean = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!std::isfinite(xs[i]) || !std::isfinite(ys[i]))
            throw std::invalid_argument("linear_fit: non-finite sample");
        x_mean += xs[i];
        y_mean += ys[i];
    }
    x_mean /= n;
    y_mean /= n;

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - x_mean;
        const double dy = ys[i] - y_mean;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) throw FitError("linear_fit: degenerate abscissae (all xs equal)");

    FitResult fit;
    fit.slope = sxy / sxx;
    fit.intercept = y_mean - fit.slope * x_mean;

    double ss_res = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (fit.slope * xs[i] + fit.intercept);
        ss_res += r * r;
        fit.residual_max = std::max(fit.residual_max, std::abs(r));
    }
    if (syy > 0.0) {
        fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
    } else {
        // Flat data: a zero-slope line reproduces it exactly.
        fit.r_squared = 1.0;
    }
    return fit;
}

}  // namespace fluxon
