#pragma once

#include <stdexcept>
#include <string>

namespace kstefan {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function (b = 0, -1, ...; x <= 0 for Gamma).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A series or iteration did not meet its stopping rule within its cap.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// No sign change of the front residual was found inside the bracket limit.
class BracketError : public ConvergenceError {
public:
    using ConvergenceError::ConvergenceError;
};

/// Physical or configuration data that violates a stated constraint.
class InvalidSpec : public Error {
public:
    using Error::Error;
};

/// Input data fails a threshold required by an equivalence map.
class PreconditionError : public Error {
public:
    PreconditionError(const std::string& what, double threshold)
        : Error(what), threshold_(threshold) {}

    double threshold() const noexcept { return threshold_; }

private:
    double threshold_;
};

/// A property the closed form guarantees did not hold at runtime.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

/// Failure inside the finite-difference reference solver.
class OracleError : public Error {
public:
    using Error::Error;
};

}  // namespace kstefan
