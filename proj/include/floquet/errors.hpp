#pragma once

#include <stdexcept>
#include <string>

namespace floquet {

// Error taxonomy. Every failure mode surfaces as one of these so the CLI can
// map categories to exit codes.

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : ValidationError {
    using ValidationError::ValidationError;
};

struct DomainError : ValidationError {
    using ValidationError::ValidationError;
};

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RangeError : NumericError {
    using NumericError::NumericError;
};

struct SingularityError : NumericError {
    using NumericError::NumericError;
};

struct TruncationError : NumericError {
    using NumericError::NumericError;
};

struct StiffnessError : NumericError {
    using NumericError::NumericError;
};

// Fixed-point space of a monodromy map is not one-dimensional; no unique
// steady state to report.
struct AmbiguityError : NumericError {
    using NumericError::NumericError;
};

struct ConvergenceError : NumericError {
    double last_residual = 0.0;
    ConvergenceError(const std::string& what, double residual)
        : NumericError(what), last_residual(residual) {}
};

struct FitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace floquet
