#pragma once

#include <stdexcept>
#include <string>

namespace coulomb {

/// Base class for every error raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad inputs, unmet assumptions, unsupported parameter combinations.
/// The CLI maps these to exit code 2.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A numeric routine failed to deliver its contract (no bracket, budget
/// exhausted, non-finite evaluation). The CLI maps these to exit code 3.
class NumericError : public Error {
public:
    using Error::Error;
};

class NoSignChange : public NumericError {
public:
    using NumericError::NumericError;
};

class NonFinite : public NumericError {
public:
    using NumericError::NumericError;
};

class MaxDepthExceeded : public NumericError {
public:
    using NumericError::NumericError;
};

class NoSolution : public NumericError {
public:
    using NumericError::NumericError;
};

class DomainError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class ParameterError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// The strictly-convex sampling path was requested without a certified
/// lower bound on V''.
class NoConvexityFloor : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// n is too small for the edge-scaling sequences (c_n <= 0).
class SubcriticalN : public ValidationError {
public:
    SubcriticalN(std::uint64_t n, std::uint64_t minimal)
        : ValidationError("n=" + std::to_string(n) +
                          " is subcritical for edge scaling (c_n <= 0); smallest admissible n is " +
                          std::to_string(minimal)),
          n_(n), minimal_(minimal) {}
    std::uint64_t n() const { return n_; }
    std::uint64_t minimal_admissible_n() const { return minimal_; }

private:
    std::uint64_t n_;
    std::uint64_t minimal_;
};

class AssumptionViolated : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class EmptySample : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Filesystem failures, reported with the offending path.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace coulomb
