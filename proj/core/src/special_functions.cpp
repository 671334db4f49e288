#include "vegasplus/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "vegasplus/errors.hpp"

namespace vegasplus {

namespace {

// Giles' single-precision approximation; about 1e-7 relative, enough for
// one Newton step to reach double accuracy.
double erfinv_guess(double x) {
    double w = -std::log((1.0 - x) * (1.0 + x));
    double p;
    if (w < 5.0) {
        w -= 2.5;
        p = 2.81022636e-08;
        p = 3.43273939e-07 + p * w;
        p = -3.5233877e-06 + p * w;
        p = -4.39150654e-06 + p * w;
        p = 0.00021858087 + p * w;
        p = -0.00125372503 + p * w;
        p = -0.00417768164 + p * w;
        p = 0.246640727 + p * w;
        p = 1.50140941 + p * w;
    } else {
        w = std::sqrt(w) - 3.0;
        p = -0.000200214257;
        p = 0.000100950558 + p * w;
        p = 0.00134934322 + p * w;
        p = -0.00367342844 + p * w;
        p = 0.00573950773 + p * w;
        p = -0.0076224613 + p * w;
        p = 0.00943887047 + p * w;
        p = 1.00167406 + p * w;
        p = 2.83297682 + p * w;
    }
    return p * x;
}

}  // namespace

double erfinv(double x) {
    if (std::isnan(x) || x < -1.0 || x > 1.0) return std::numeric_limits<double>::quiet_NaN();
    if (x == 1.0) return std::numeric_limits<double>::infinity();
    if (x == -1.0) return -std::numeric_limits<double>::infinity();

    double y = erfinv_guess(x);
    // Halley iterations on erf(y) = x. The starting guess loses accuracy in
    // the far tails, where a single step is not enough.
    for (int iter = 0; iter < 6; ++iter) {
        // Residual erf(y) - x, computed through erfc in the tails where 1 -+ x is exact.
        double residual;
        if (x >= 0.5) {
            residual = (1.0 - x) - std::erfc(y);
        } else if (x <= -0.5) {
            residual = std::erfc(-y) - (1.0 + x);
        } else {
            residual = std::erf(y) - x;
        }
        const double slope = 2.0 / std::sqrt(std::numbers::pi) * std::exp(-y * y);
        if (!(slope > 0.0)) break;
        const double newton = residual / slope;
        const double step = newton / (1.0 + y * newton);
        y -= step;
        if (std::abs(step) <= 1e-16 * std::abs(y)) break;
    }
    return y;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double tridiagonal_logdet_quad(std::span<const double> diag, std::span<const double> off, std::span<const double> b,
                               double& quad) {
    const std::size_t n = diag.size();
    if (off.size() + 1 != n || b.size() != n) throw ContractViolation("tridiagonal: inconsistent sizes");
    // LDL^T factorization; M^{-1} b via forward/backward substitution.
    std::vector<double> d(n);
    std::vector<double> l(n, 0.0);
    double logdet = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = diag[i];
        if (i > 0) {
            l[i] = off[i - 1] / d[i - 1];
            d[i] -= l[i] * off[i - 1];
        }
        if (!(d[i] > 0.0)) throw ContractViolation("tridiagonal: matrix is not positive definite");
        logdet += std::log(d[i]);
    }
    std::vector<double> z(b.begin(), b.end());
    for (std::size_t i = 1; i < n; ++i) z[i] -= l[i] * z[i - 1];
    // b^T M^{-1} b = z^T D^{-1} z
    quad = 0.0;
    for (std::size_t i = 0; i < n; ++i) quad += z[i] * z[i] / d[i];
    return logdet;
}

}  // namespace vegasplus
