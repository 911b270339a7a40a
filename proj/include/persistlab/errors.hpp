#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace persistlab {

/// Base class for all persistlab errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad inputs: rejected before any computation starts (CLI exit code 1).
class ValidationError : public Error {
public:
    using Error::Error;
};

class NonPositiveRateError : public ValidationError {
public:
    explicit NonPositiveRateError(const std::string& name)
        : ValidationError("rate '" + name + "' must be > 0"), name_(name) {}
    const std::string& rate_name() const { return name_; }

private:
    std::string name_;
};

class NonFiniteError : public ValidationError {
public:
    explicit NonFiniteError(const std::string& name)
        : ValidationError("value '" + name + "' must be finite") {}
};

class DegenerateRateError : public ValidationError {
public:
    explicit DegenerateRateError(const std::string& what) : ValidationError(what) {}
};

class NotBalancedError : public ValidationError {
public:
    explicit NotBalancedError(const std::string& what) : ValidationError(what) {}
};

/// Numerical failures: inputs were valid but the computation could not be
/// completed reliably (CLI exit code 2).
class NumericalError : public Error {
public:
    using Error::Error;
};

class SaturationError : public NumericalError {
public:
    explicit SaturationError(double exponent)
        : NumericalError("exp(" + std::to_string(exponent) +
                         ") exceeds the configured saturation threshold") {}
};

class BracketFailureError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class QuadratureDivergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Raised by the event-driven simulator when a replicate's population passes
/// the configured cap; callers classify the replicate as survived-by-explosion.
class PopulationCapError : public NumericalError {
public:
    PopulationCapError(std::int64_t n1, std::int64_t n2, double t)
        : NumericalError("population cap exceeded"), n1(n1), n2(n2), t(t) {}
    std::int64_t n1;
    std::int64_t n2;
    double t;
};

/// Raised by the graphical construction when a tree passes the node budget.
class NodeBudgetError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// File and format problems (CLI exit code 3).
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace persistlab
