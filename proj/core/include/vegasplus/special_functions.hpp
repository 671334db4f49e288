#pragma once

#include <span>

namespace vegasplus {

/// Inverse error function on (-1, 1): rational starting guess refined by
/// Halley iterations. Returns +-infinity at +-1 and NaN outside [-1, 1].
double erfinv(double x);

/// Standard normal CDF.
double normal_cdf(double z);

/// Log-determinant and quadratic form of a symmetric positive-definite
/// tridiagonal matrix M: returns log det M and writes b^T M^{-1} b to `quad`.
/// `diag` has n entries, `off` has n-1.
double tridiagonal_logdet_quad(std::span<const double> diag, std::span<const double> off, std::span<const double> b,
                               double& quad);

}  // namespace vegasplus
