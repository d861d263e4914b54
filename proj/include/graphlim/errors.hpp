#pragma once

#include <stdexcept>
#include <string>

namespace graphlim {

// Error taxonomy shared by the library and the CLI exit-code mapping.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid argument values or malformed input data.
struct DomainError : Error {
    using Error::Error;
};

// (e, t) pair outside the feasible density region.
struct RegionError : DomainError {
    using DomainError::DomainError;
};

// Kernel value on {0, 1} where a strictly interior kernel is required.
struct BoundaryError : DomainError {
    using DomainError::DomainError;
};

// Iterative solver failed to reach the requested tolerance.
struct ConvergenceError : Error {
    double best_residual;
    ConvergenceError(const std::string& msg, double residual)
        : Error(msg), best_residual(residual) {}
};

// Input exceeds a hard combinatorial-size cap.
struct SizeError : Error {
    using Error::Error;
};

// Conditional edge-density shell contains no graphs.
struct EmptyShellError : Error {
    using Error::Error;
};

}  // namespace graphlim
