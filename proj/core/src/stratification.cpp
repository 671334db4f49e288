#include "vegasplus/stratification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "vegasplus/errors.hpp"

namespace vegasplus {

std::uint64_t checked_pow(std::uint64_t base, std::size_t exponent) noexcept {
    std::uint64_t result = 1;
    for (std::size_t i = 0; i < exponent; ++i) {
        if (base != 0 && result > std::numeric_limits<std::uint64_t>::max() / base) return 0;
        result *= base;
    }
    return result;
}

std::size_t compute_n_strat(std::uint64_t n_eval, std::size_t dims, std::uint64_t cube_cap) {
    if (dims == 0) throw ContractViolation("compute_n_strat: dims must be >= 1");
    const std::uint64_t limit = std::min(cube_cap, n_eval / 2);
    if (limit <= 1) return 1;
    auto fits = [&](std::uint64_t n) {
        const std::uint64_t cubes = checked_pow(n, dims);
        return cubes != 0 && cubes <= limit;
    };
    const double estimate = std::floor(std::pow(static_cast<double>(n_eval) / 2.0, 1.0 / static_cast<double>(dims)));
    std::uint64_t n = static_cast<std::uint64_t>(std::max(1.0, estimate)) + 1;
    while (n > 1 && !fits(n)) --n;
    return static_cast<std::size_t>(n);
}

namespace {

// Writes (spread/max)^beta into w and returns the sum. Multiples of 1/4 up to
// 1 go through sqrt, which is several times cheaper than pow over a million
// cubes and lets the loop vectorize.
template <int Quarters>
double power_weights(std::span<const double> spread, double inv_max, std::vector<double>& w) {
    const std::size_t n = spread.size();
    for (std::size_t h = 0; h < n; ++h) {
        const double x = spread[h] * inv_max;
        if constexpr (Quarters == 4) {
            w[h] = x;
        } else if constexpr (Quarters == 2) {
            w[h] = std::sqrt(x);
        } else {
            const double r2 = std::sqrt(x);
            const double r4 = std::sqrt(r2);
            w[h] = Quarters == 1 ? r4 : r2 * r4;
        }
    }
    double total = 0.0;
    for (std::size_t h = 0; h < n; ++h) total += w[h];
    return total;
}

double power_weights(std::span<const double> spread, double inv_max, double beta, std::vector<double>& w) {
    if (beta == 0.25) return power_weights<1>(spread, inv_max, w);
    if (beta == 0.5) return power_weights<2>(spread, inv_max, w);
    if (beta == 0.75) return power_weights<3>(spread, inv_max, w);
    if (beta == 1.0) return power_weights<4>(spread, inv_max, w);
    double total = 0.0;
    for (std::size_t h = 0; h < spread.size(); ++h) {
        w[h] = std::pow(spread[h] * inv_max, beta);
        total += w[h];
    }
    return total;
}

}  // namespace

void update_evals_per_cube(std::span<const double> spread, double beta, std::uint64_t n_eval,
                           std::vector<std::uint64_t>& n_h, std::vector<double>& scratch) {
    if (!(beta >= 0.0)) throw ContractViolation("update_evals_per_cube: beta must be >= 0");
    const std::size_t n = spread.size();
    n_h.resize(n);
    if (n == 0) return;

    double max_spread = 0.0;
    bool valid = true;
    for (double d : spread) {
        valid &= d >= 0.0 && d <= std::numeric_limits<double>::max();
        max_spread = std::max(max_spread, d);
    }
    if (!valid) throw ContractViolation("update_evals_per_cube: spread must be finite and >= 0");

    // The guard keeps float jitter at exact integers from rounding up while
    // still guaranteeing sum(n_h) >= n_eval for n_eval < 1e12.
    constexpr double kGuard = 1.0 - 1e-12;
    const double budget = static_cast<double>(n_eval) * kGuard;
    auto assign = [&](std::size_t h, double share) {
        const double want = std::ceil(budget * share);
        n_h[h] = std::max<std::uint64_t>(2, static_cast<std::uint64_t>(want));
    };

    if (beta == 0.0 || max_spread == 0.0) {
        const double share = 1.0 / static_cast<double>(n);
        for (std::size_t h = 0; h < n; ++h) assign(h, share);
        return;
    }

    scratch.resize(n);
    const double total = power_weights(spread, 1.0 / max_spread, beta, scratch);
    const double inv_total = 1.0 / total;
    for (std::size_t h = 0; h < n; ++h) assign(h, scratch[h] * inv_total);
}

std::vector<std::uint64_t> update_evals_per_cube(std::span<const double> spread, double beta, std::uint64_t n_eval) {
    std::vector<std::uint64_t> n_h;
    std::vector<double> scratch;
    update_evals_per_cube(spread, beta, n_eval, n_h, scratch);
    return n_h;
}

void cube_origin(std::uint64_t h, std::size_t n_strat, std::span<double> origin) {
    const double inv = 1.0 / static_cast<double>(n_strat);
    for (auto& o : origin) {
        o = static_cast<double>(h % n_strat) * inv;
        h /= n_strat;
    }
    if (h != 0) throw ContractViolation("cube_origin: cube index out of range");
}

StratGrid::StratGrid(std::size_t dims, std::size_t n_strat, std::uint64_t n_eval)
    : dims_(dims), n_strat_(n_strat), n_eval_(n_eval) {
    if (dims == 0 || n_strat == 0) throw InvalidConfig("StratGrid: dims and n_strat must be >= 1");
    n_cubes_ = checked_pow(n_strat, dims);
    if (n_cubes_ == 0 || n_cubes_ > std::numeric_limits<std::uint32_t>::max()) {
        throw InvalidConfig("StratGrid: n_strat^dims overflows");
    }
    cube_volume_ = std::pow(static_cast<double>(n_strat), -static_cast<double>(dims));
    spread_.assign(n_cubes_, 0.0);
    evals_per_cube_ = update_evals_per_cube(spread_, 0.0, n_eval_);
}

void StratGrid::reallocate(std::span<const double> spread, double beta) {
    if (spread.size() != n_cubes_) throw ContractViolation("reallocate: spread has wrong length");
    std::ranges::copy(spread, spread_.begin());
    update_evals_per_cube(spread_, beta, n_eval_, evals_per_cube_, weights_);
}

void StratGrid::reallocate(std::vector<double>&& spread, double beta) {
    if (spread.size() != n_cubes_) throw ContractViolation("reallocate: spread has wrong length");
    spread_.swap(spread);
    update_evals_per_cube(spread_, beta, n_eval_, evals_per_cube_, weights_);
}

RunPlan RunPlan::build(std::span<const std::uint64_t> evals_per_cube) {
    RunPlan plan;
    plan.rebuild(evals_per_cube);
    return plan;
}

void RunPlan::rebuild(std::span<const std::uint64_t> evals_per_cube) {
    offsets_.resize(evals_per_cube.size() + 1);
    std::uint64_t total = 0;
    offsets_[0] = 0;
    for (std::size_t h = 0; h < evals_per_cube.size(); ++h) {
        total += evals_per_cube[h];
        offsets_[h + 1] = total;
    }
}

std::uint64_t RunPlan::run_to_cube(std::uint64_t r) const {
    if (r >= total_runs()) {
        throw ContractViolation("run_to_cube: run " + std::to_string(r) + " out of range");
    }
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), r);
    return static_cast<std::uint64_t>(it - offsets_.begin()) - 1;
}

void CubeAccumulators::add(const CubeAccumulators& other) {
    if (other.size() != size()) throw InternalError("CubeAccumulators::add: shape mismatch");
    for (std::size_t h = 0; h < s1_.size(); ++h) {
        s1_[h] += other.s1_[h];
        s2_[h] += other.s2_[h];
        count_[h] += other.count_[h];
    }
}

void CubeAccumulators::reset() noexcept {
    std::ranges::fill(s1_, 0.0);
    std::ranges::fill(s2_, 0.0);
    std::ranges::fill(count_, std::uint64_t{0});
}

void compute_results(const CubeAccumulators& acc, double cube_volume, IterationEstimate& out) {
    const auto s1 = acc.s1();
    const auto s2 = acc.s2();
    const auto count = acc.count();
    out.spread.resize(acc.size());
    std::uint64_t min_count = std::numeric_limits<std::uint64_t>::max();
    double integral = 0.0;
    double variance = 0.0;
    for (std::size_t h = 0; h < acc.size(); ++h) {
        min_count = std::min(min_count, count[h]);
        const double inv_n = 1.0 / static_cast<double>(count[h]);
        const double mean = s1[h] * inv_n;
        const double rawvar = std::max(0.0, s2[h] * inv_n - mean * mean);
        integral += mean;
        variance += rawvar * inv_n;
        out.spread[h] = std::sqrt(rawvar) * cube_volume;
    }
    if (acc.size() > 0 && min_count < 2) {
        const auto it = std::ranges::find_if(count, [](std::uint64_t c) { return c < 2; });
        throw InternalError("compute_results: cube " + std::to_string(it - count.begin()) +
                            " has fewer than 2 samples");
    }
    out.integral = cube_volume * integral;
    out.variance = cube_volume * cube_volume * variance;
}

IterationEstimate compute_results(const CubeAccumulators& acc, double cube_volume) {
    IterationEstimate out;
    compute_results(acc, cube_volume, out);
    return out;
}

}  // namespace vegasplus
