#include "vegasplus/integrands.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>

#include "vegasplus/errors.hpp"
#include "vegasplus/special_functions.hpp"

namespace vegasplus {

namespace functions {

double sin_exponential(std::span<const double> x) { return std::sin(x[0]) + std::exp(x[1]); }

double linear(std::span<const double> x) { return std::accumulate(x.begin(), x.end(), 0.0); }

double cosine(std::span<const double> x) {
    double p = 1.0;
    for (double v : x) p *= std::cos(v);
    return p;
}

double exponential(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::exp(s);
}

double roos_arnold(std::span<const double> x) {
    double p = 1.0;
    for (double v : x) p *= std::abs(4.0 * v - 2.0);
    return p;
}

double morokoff(std::span<const double> x) {
    const double d = static_cast<double>(x.size());
    const double inv = 1.0 / d;
    double p = std::pow(1.0 + inv, d);
    for (double v : x) p *= std::pow(v, inv);
    return p;
}

double gaussian(std::span<const double> x, double mu, double sigma) {
    const double d = static_cast<double>(x.size());
    double s = 0.0;
    for (double v : x) s += (v - mu) * (v - mu);
    const double norm = std::pow(2.0 * std::numbers::pi * sigma * sigma, -d / 2.0);
    return norm * std::exp(-s / (2.0 * sigma * sigma));
}

double ridge(std::span<const double> x, std::size_t terms) {
    // Sorting makes the sum exactly invariant under coordinate permutations.
    std::array<double, 16> small{};
    std::vector<double> large;
    std::span<double> sorted;
    if (x.size() <= small.size()) {
        sorted = std::span<double>(small.data(), x.size());
    } else {
        large.resize(x.size());
        sorted = large;
    }
    std::ranges::copy(x, sorted.begin());
    std::ranges::sort(sorted);

    const double step = terms > 1 ? 1.0 / static_cast<double>(terms - 1) : 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < terms; ++i) {
        const double center = static_cast<double>(i) * step;
        double dist2 = 0.0;
        for (double v : sorted) dist2 += (v - center) * (v - center);
        total += std::exp(-100.0 * dist2);
    }
    return 10000.0 / (std::numbers::pi * std::numbers::pi * static_cast<double>(terms)) * total;
}

double ridge_integral(std::size_t dims, std::size_t terms) {
    const double step = terms > 1 ? 1.0 / static_cast<double>(terms - 1) : 0.0;
    const double half_root_pi = std::sqrt(std::numbers::pi) / 20.0;
    double total = 0.0;
    for (std::size_t i = 0; i < terms; ++i) {
        const double center = static_cast<double>(i) * step;
        const double axis = half_root_pi * (std::erf(10.0 * (1.0 - center)) + std::erf(10.0 * center));
        total += std::pow(axis, static_cast<double>(dims));
    }
    return 10000.0 / (std::numbers::pi * std::numbers::pi * static_cast<double>(terms)) * total;
}

double gaussian_integral(std::size_t dims, double mu, double sigma) {
    const double scale = sigma * std::numbers::sqrt2;
    const double axis = 0.5 * (std::erf((1.0 - mu) / scale) + std::erf(mu / scale));
    return std::pow(axis, static_cast<double>(dims));
}

double exp_square_integral() {
    // sum_k 1 / (k! (2k+1))
    double total = 0.0;
    double factorial = 1.0;
    for (int k = 0; k < 30; ++k) {
        if (k > 0) factorial *= k;
        total += 1.0 / (factorial * (2.0 * k + 1.0));
    }
    return total;
}

}  // namespace functions

double asian_option(std::span<const double> x, const AsianOption& option) {
    constexpr double eps = 1e-12;
    double z = 0.0;
    for (double v : x) {
        const double u = std::clamp(v, eps, 1.0 - eps);
        z += erfinv(2.0 * u - 1.0) * std::numbers::sqrt2;
    }
    const double drift = (option.rate - 0.5 * option.volatility * option.volatility) * option.maturity;
    const double s_avg = option.spot * std::exp(drift + option.volatility * std::sqrt(option.maturity) * z);
    return std::exp(-option.rate * option.maturity) * std::max(s_avg - option.strike, 0.0);
}

double asian_option_price(const AsianOption& option) {
    // Sum of n standard normals is sqrt(n) Z: a lognormal with total volatility s.
    const double drift = (option.rate - 0.5 * option.volatility * option.volatility) * option.maturity;
    const double s = option.volatility * std::sqrt(option.maturity * static_cast<double>(option.steps));
    const double discount = std::exp(-option.rate * option.maturity);
    const double forward = option.spot * std::exp(drift + 0.5 * s * s);
    if (option.strike <= 0.0) return discount * (forward - option.strike);
    const double d2 = (std::log(option.spot / option.strike) + drift) / s;
    const double d1 = d2 + s;
    return discount * (forward * normal_cdf(d1) - option.strike * normal_cdf(d2));
}

double path_integral_weight(std::span<const double> x, const PathIntegral& path) {
    const double a = path.spacing();
    const double m = path.mass;
    const std::size_t n = path.slices;
    if (x.size() + 1 != n) throw ContractViolation("path_integral_weight: expected slices-1 coordinates");
    const double prefactor = std::pow(m / (2.0 * std::numbers::pi * a), static_cast<double>(n) / 2.0);

    auto site = [&](std::size_t j) { return (j == 0 || j == n) ? path.x_end : x[j - 1]; };
    double action = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double xj = site(j);
        const double step = site(j + 1) - xj;
        action += m / (2.0 * a) * step * step + a * 0.5 * xj * xj;
    }
    return prefactor * std::exp(-action);
}

double lattice_propagator(const PathIntegral& path) {
    const double a = path.spacing();
    const double m = path.mass;
    const std::size_t n = path.slices;
    const double prefactor = std::pow(m / (2.0 * std::numbers::pi * a), static_cast<double>(n) / 2.0);
    const double xe = path.x_end;
    if (n == 1) return prefactor * std::exp(-a * 0.5 * xe * xe);

    // S = x^T M x / 2 - b^T x + c over the n-1 interior points.
    const std::size_t k = n - 1;
    std::vector<double> diag(k, 2.0 * m / a + a);
    std::vector<double> off(k - 1, -m / a);
    std::vector<double> b(k, 0.0);
    b.front() += m / a * xe;
    b.back() += m / a * xe;
    const double c = m / a * xe * xe + a * 0.5 * xe * xe;

    double quad = 0.0;
    const double logdet = tridiagonal_logdet_quad(diag, off, b, quad);
    const double log_gauss = 0.5 * static_cast<double>(k) * std::log(2.0 * std::numbers::pi) - 0.5 * logdet;
    return prefactor * std::exp(-c + 0.5 * quad + log_gauss);
}

double continuum_propagator(const PathIntegral& path) {
    const double m = path.mass;
    const double omega = 1.0 / std::sqrt(m);
    const double t = path.time;
    const double xe = path.x_end;
    return std::sqrt(m * omega / (2.0 * std::numbers::pi * std::sinh(omega * t))) *
           std::exp(-m * omega * xe * xe * std::tanh(omega * t / 2.0));
}

IntegrandSpec make_asian_option(const AsianOption& option) {
    if (option.steps == 0) throw InvalidConfig("asian_option: steps must be >= 1");
    const bool finite = std::isfinite(option.spot) && std::isfinite(option.strike) && std::isfinite(option.rate) &&
                        std::isfinite(option.volatility) && std::isfinite(option.maturity);
    if (!finite || !(option.spot > 0.0) || !(option.volatility > 0.0) || !(option.maturity > 0.0)) {
        throw InvalidConfig("asian_option: spot, volatility and maturity must be positive and finite");
    }
    IntegrandSpec spec;
    spec.name = "asian_option";
    spec.dims = option.steps;
    spec.domain.assign(option.steps, Bounds{0.0, 1.0});
    spec.evaluate = [option](std::span<const double> x) { return asian_option(x, option); };
    spec.reference_value = asian_option_price(option);
    if (!std::isfinite(spec.reference_value)) {
        throw InvalidConfig("asian_option: closed-form price overflows for these parameters");
    }
    spec.reference_method = ReferenceMethod::closed_form;
    spec.reference_note = "lognormal closed form with volatility sigma*sqrt(T*n)";
    return spec;
}

IntegrandSpec make_path_integral(const PathIntegral& path) {
    if (path.slices < 2) throw InvalidConfig("path_integral: need at least 2 slices to have integration variables");
    if (!(path.time > 0.0) || !(path.mass > 0.0) || !(path.box > 0.0)) {
        throw InvalidConfig("path_integral: time, mass and box must be positive");
    }
    IntegrandSpec spec;
    spec.name = "path_integral";
    spec.dims = path.slices - 1;
    spec.domain.assign(spec.dims, Bounds{-path.box, path.box});
    spec.evaluate = [path](std::span<const double> x) { return path_integral_weight(x, path); };
    spec.reference_value = lattice_propagator(path);
    spec.reference_method = ReferenceMethod::closed_form;
    spec.reference_note = "exact Gaussian lattice integral over R^(N-1); box truncation neglected";
    return spec;
}

namespace {

IntegrandSpec unit_cube(std::string name, std::size_t dims, double (*fn)(std::span<const double>), double reference,
                        std::string note) {
    IntegrandSpec spec;
    spec.name = std::move(name);
    spec.dims = dims;
    spec.domain.assign(dims, Bounds{0.0, 1.0});
    spec.evaluate = fn;
    spec.reference_value = reference;
    spec.reference_method = ReferenceMethod::closed_form;
    spec.reference_note = std::move(note);
    return spec;
}

const std::vector<std::string>& names() {
    static const std::vector<std::string> all = {"sinexp",   "linear",   "cosine", "exponential", "roos_arnold",
                                                 "morokoff", "gaussian", "ridge",  "asian_option", "path_integral"};
    return all;
}

std::size_t default_dims(std::string_view name) {
    if (name == "sinexp") return 2;
    if (name == "morokoff") return 8;
    if (name == "gaussian" || name == "ridge") return 4;
    if (name == "asian_option") return 16;
    if (name == "path_integral") return 7;
    return 10;
}

}  // namespace

std::vector<std::string> registered_names() { return names(); }

IntegrandSpec lookup(std::string_view name) {
    const auto& all = names();
    if (std::ranges::find(all, name) == all.end()) {
        std::string msg = "unknown integrand '" + std::string(name) + "'; available:";
        for (const auto& n : all) msg += " " + n;
        throw NotFound(msg);
    }
    return lookup(name, default_dims(name));
}

IntegrandSpec lookup(std::string_view name, std::size_t dims) {
    if (dims == 0) throw InvalidConfig("integrand dimension must be >= 1");
    const double d = static_cast<double>(dims);
    if (name == "sinexp") {
        if (dims != 2) throw InvalidConfig("sinexp is two-dimensional");
        auto spec = unit_cube("sinexp", 2, functions::sin_exponential, (1.0 - std::cos(1.0)) + (std::numbers::e - 1.0),
                              "(1 - cos 1) + (e - 1)");
        spec.variable_dims = false;
        return spec;
    }
    if (name == "linear") return unit_cube("linear", dims, functions::linear, d / 2.0, "d/2");
    if (name == "cosine") return unit_cube("cosine", dims, functions::cosine, std::pow(std::sin(1.0), d), "sin(1)^d");
    if (name == "exponential") {
        return unit_cube("exponential", dims, functions::exponential, std::pow(functions::exp_square_integral(), d),
                         "(integral of exp(x^2) on [0,1])^d");
    }
    if (name == "roos_arnold") return unit_cube("roos_arnold", dims, functions::roos_arnold, 1.0, "1");
    if (name == "morokoff") return unit_cube("morokoff", dims, functions::morokoff, 1.0, "1");
    if (name == "gaussian") {
        auto spec = unit_cube("gaussian", dims, nullptr, functions::gaussian_integral(dims),
                              "product of per-axis erf integrals, mu=0.5 sigma=0.01");
        spec.evaluate = [](std::span<const double> x) { return functions::gaussian(x); };
        return spec;
    }
    if (name == "ridge") {
        auto spec = unit_cube("ridge", dims, nullptr, functions::ridge_integral(dims),
                              "sum over 1000 separable Gaussians of per-axis erf integrals");
        spec.evaluate = [](std::span<const double> x) { return functions::ridge(x); };
        return spec;
    }
    if (name == "asian_option") {
        AsianOption option;
        option.steps = dims;
        return make_asian_option(option);
    }
    if (name == "path_integral") {
        PathIntegral path;
        path.slices = dims + 1;
        return make_path_integral(path);
    }
    return lookup(name);  // unknown: throws NotFound with the list
}

}  // namespace vegasplus
