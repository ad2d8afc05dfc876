#pragma once

#include <stdexcept>
#include <string>

namespace udw {

// Bad argument to any public operation (branch index, family, L = 0 for the
// thermal correlator, ...).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Hyperbolic arguments beyond the double-precision safe range.
class OutOfRange : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// A closed-form probability was requested outside the regime where the
// shifted integration contour is pole-free.
class ValidityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// sin(beta) == 0: the saddle-point expression is singular.
class SingularParameter : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double last_error)
        : std::runtime_error(what), last_error_(last_error) {}

    double last_error() const noexcept { return last_error_; }

private:
    double last_error_;
};

// Detailed-balance ratio undefined because the emission-side rate is zero
// within its own error estimate.
class IndeterminateRatio : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace udw
