#pragma once

#include <stdexcept>
#include <string>

namespace dlab {

// Base class for all failures raised by the library. Subclasses split into
// two families the CLI maps onto exit codes: validation errors (bad inputs,
// unknown names, violated parameter constraints) and numeric errors
// (a computation that started but could not meet its own tolerance).
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct ValidationError : Error {
    using Error::Error;
};

struct NumericError : Error {
    using Error::Error;
};

struct NonFiniteSymbol : ValidationError {
    using ValidationError::ValidationError;
};

struct UnknownPhase : ValidationError {
    using ValidationError::ValidationError;
};

struct BadParams : ValidationError {
    using ValidationError::ValidationError;
};

struct ArityMismatch : ValidationError {
    using ValidationError::ValidationError;
};

struct HypothesisViolated : ValidationError {
    using ValidationError::ValidationError;
};

struct EmptyTrajectory : ValidationError {
    using ValidationError::ValidationError;
};

struct GridTooCoarse : ValidationError {
    using ValidationError::ValidationError;
};

struct QuadratureNotConverged : NumericError {
    using NumericError::NumericError;
};

struct NotContracting : NumericError {
    using NumericError::NumericError;
};

struct ResolutionLost : NumericError {
    using NumericError::NumericError;
};

struct StepUnstable : NumericError {
    using NumericError::NumericError;
};

struct InsufficientTail : NumericError {
    using NumericError::NumericError;
};

} // namespace dlab
