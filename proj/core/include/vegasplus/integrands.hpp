#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vegasplus/importance_map.hpp"
#include "vegasplus/integrand.hpp"

namespace vegasplus {

enum class ReferenceMethod { closed_form, oracle };

/// A named test integrand with its domain and a reference value.
struct IntegrandSpec {
    std::string name;
    std::size_t dims = 0;
    std::vector<Bounds> domain;
    std::function<double(std::span<const double>)> evaluate;
    double reference_value = 0.0;
    ReferenceMethod reference_method = ReferenceMethod::closed_form;
    std::string reference_note;
    bool variable_dims = true;

    Integrand integrand() const { return Integrand(evaluate); }
};

// Benchmark functions on [0,1]^d.
namespace functions {

double sin_exponential(std::span<const double> x);
double linear(std::span<const double> x);
double cosine(std::span<const double> x);
double exponential(std::span<const double> x);
double roos_arnold(std::span<const double> x);
double morokoff(std::span<const double> x);
double gaussian(std::span<const double> x, double mu = 0.5, double sigma = 0.01);
double ridge(std::span<const double> x, std::size_t terms = 1000);

/// Exact integral of ridge() over [0,1]^dims (a sum of separable Gaussians).
double ridge_integral(std::size_t dims, std::size_t terms = 1000);
/// Exact integral of gaussian() over [0,1]^dims.
double gaussian_integral(std::size_t dims, double mu = 0.5, double sigma = 0.01);
/// Integral of exp(x^2) over [0,1], by its power series.
double exp_square_integral();

}  // namespace functions

/// Asian call payoff in the geometric form
/// S_avg = S0 exp((r - sigma^2/2) T + sigma sqrt(T) sum_i sqrt(2) erfinv(2 x_i - 1)),
/// discounted by exp(-r T).
struct AsianOption {
    double spot = 100.0;
    double strike = 100.0;
    double rate = 0.05;
    double volatility = 0.2;
    double maturity = 1.0;
    std::size_t steps = 16;
};

/// Payoff at a point of the unit cube; coordinates are clamped to [1e-12, 1-1e-12].
double asian_option(std::span<const double> x, const AsianOption& option);

/// Closed-form value of the integral of asian_option() over the unit cube.
double asian_option_price(const AsianOption& option);

/// Euclidean lattice path integral of the harmonic oscillator V(x) = x^2/2
/// with N slices of spacing a = T/N and both endpoints pinned at x_end.
struct PathIntegral {
    double mass = 1.0;
    double time = 4.0;
    std::size_t slices = 8;
    double x_end = 0.0;
    double box = 5.0;  // interior coordinates are integrated over [-box, box]

    double spacing() const noexcept { return time / static_cast<double>(slices); }
};

/// A * exp(-S_lat[x]) for the slices-1 interior coordinates x.
double path_integral_weight(std::span<const double> x, const PathIntegral& path);

/// Exact value of the lattice integral over R^(N-1) (Gaussian integral).
double lattice_propagator(const PathIntegral& path);

/// Continuum propagator <x|exp(-HT)|x> (Mehler kernel) with omega = 1/sqrt(m).
double continuum_propagator(const PathIntegral& path);

IntegrandSpec make_asian_option(const AsianOption& option);
IntegrandSpec make_path_integral(const PathIntegral& path);

/// Stable identifiers of the built-in integrands, in registry order.
std::vector<std::string> registered_names();

/// Built-in integrand by name at its default dimension. Throws NotFound
/// listing the available names.
IntegrandSpec lookup(std::string_view name);

/// Built-in integrand at a chosen dimension. For path_integral the dimension
/// is the number of interior points (slices - 1). Throws InvalidConfig when
/// the integrand has a fixed dimension that differs.
IntegrandSpec lookup(std::string_view name, std::size_t dims);

}  // namespace vegasplus
