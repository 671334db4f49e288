#include "vegasplus/errors.hpp"

#include <sstream>

namespace vegasplus {

namespace {

std::string format_point(std::span<const double> point) {
    std::ostringstream os;
    os.precision(17);
    os << '(';
    for (std::size_t i = 0; i < point.size(); ++i) {
        if (i != 0) os << ", ";
        os << point[i];
    }
    os << ')';
    return os.str();
}

}  // namespace

IntegrandError::IntegrandError(std::span<const double> point, double value)
    : IntegrationError("integrand returned non-finite value " + std::to_string(value) + " at x = " +
                       format_point(point)),
      point_(point.begin(), point.end()) {}

IntegrandError::IntegrandError(std::span<const double> point, const std::string& reason)
    : IntegrationError("integrand failed at x = " + format_point(point) + ": " + reason),
      point_(point.begin(), point.end()) {}

}  // namespace vegasplus
