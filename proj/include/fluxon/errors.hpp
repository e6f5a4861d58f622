#pragma once

#include <stdexcept>
#include <string>

namespace fluxon {

// Domain/validation problems use std::domain_error or std::invalid_argument.
// Everything below signals a numerical failure (CLI exit code 2).

struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// A requested computation would reach past an enumeration cutoff.
struct CutoffError : NumericError {
    explicit CutoffError(const std::string& msg) : NumericError(msg) {}
};

// Filling was requested at a degenerate Fermi level.
struct DegeneracyError : NumericError {
    explicit DegeneracyError(const std::string& msg) : NumericError(msg) {}
};

struct FitError : NumericError {
    explicit FitError(const std::string& msg) : NumericError(msg) {}
};

// An accuracy contract (tolerance, conservation) could not be met.
struct AccuracyError : NumericError {
    explicit AccuracyError(const std::string& msg) : NumericError(msg) {}
};

}  // namespace fluxon
