#pragma once

#include <stdexcept>
#include <string>

namespace nuderiv {

// Bad input: outside the documented domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Argument sits on a pole (gamma/digamma at nonpositive integers).
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

// Uniform-asymptotic machinery requested for an order that is too small.
class OrderTooSmall : public DomainError {
public:
    using DomainError::DomainError;
};

// Finite-difference step would not fit below the order.
class StepUnderflow : public DomainError {
public:
    using DomainError::DomainError;
};

// An iterative method ran out of budget. Carries what it had.
class ToleranceNotMet : public std::runtime_error {
public:
    ToleranceNotMet(const std::string& what, double best, double achieved)
        : std::runtime_error(what), best_estimate(best), achieved_error(achieved) {}
    double best_estimate;
    double achieved_error;
};

// Complex continuation along an integration path left the region where
// the Airy evaluation is trustworthy.
class PathFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace nuderiv
