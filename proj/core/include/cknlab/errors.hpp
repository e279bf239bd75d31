#pragma once

#include <stdexcept>
#include <string>

namespace cknlab {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Parameter point rejected. kind() is "Invalid" or "DegenerateBoundary";
// condition() names the violated inequality, e.g. "b < a+1 violated".
class ParameterError : public Error {
public:
    ParameterError(std::string kind, std::string condition)
        : Error(kind + ": " + condition), kind_(std::move(kind)), condition_(std::move(condition)) {}
    const std::string& kind() const noexcept { return kind_; }
    const std::string& condition() const noexcept { return condition_; }

private:
    std::string kind_;
    std::string condition_;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

// Quotient undefined: the function lies on the manifold of rescaled bubbles.
class OnManifoldError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NoDescentError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace cknlab
