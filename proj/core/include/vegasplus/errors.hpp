#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vegasplus {

/// Bounds that are non-finite, inverted or empty.
class InvalidDomain : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Configuration values outside their documented ranges.
class InvalidConfig : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A caller broke an operation's precondition (index out of range, y outside [0,1), ...).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Internal invariant failure: a bug, never a user error.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Registry lookup for an unknown name.
class NotFound : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Generic integration failure (e.g. nothing to combine, conflicting exact estimates).
class IntegrationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The integrand produced a non-finite value; carries the offending point.
class IntegrandError : public IntegrationError {
public:
    IntegrandError(std::span<const double> point, double value);
    IntegrandError(std::span<const double> point, const std::string& reason);

    const std::vector<double>& point() const noexcept { return point_; }

private:
    std::vector<double> point_;
};

}  // namespace vegasplus
