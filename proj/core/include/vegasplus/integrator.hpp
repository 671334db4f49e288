#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "vegasplus/fill.hpp"
#include "vegasplus/importance_map.hpp"
#include "vegasplus/integrand.hpp"
#include "vegasplus/stratification.hpp"

namespace vegasplus {

struct IntegratorConfig {
    std::uint64_t n_eval = 1'000'000;  // evaluations per iteration
    std::size_t max_it = 20;
    std::size_t skip = 0;               // iterations 1..skip are left out of the combined result
    std::uint64_t batch_size = 1'048'576;
    std::size_t n_intervals = 1024;
    double alpha = 0.5;
    double beta = 0.75;
    std::uint64_t seed = 0;
    std::size_t workers = 1;
    std::uint64_t cube_cap = kDefaultCubeCap;
    std::optional<std::size_t> n_strat_override;

    /// Throws InvalidConfig when a field is out of range.
    void validate() const;
};

struct IterationResult {
    std::size_t index = 0;  // 1-based
    double estimate = 0.0;
    double variance = 0.0;
    bool included = false;

    double sigma() const;
};

/// Wall time per phase in milliseconds.
struct PhaseTimes {
    double init = 0.0;    // validation, allocation, initial map and grid
    double map = 0.0;     // evaluation-to-cube run plans
    double fill = 0.0;    // sampling, integrand calls, accumulation
    double update = 0.0;  // weight resets, stratification and map updates, results
    double clear = 0.0;   // releasing buffers

    double total() const noexcept { return init + map + fill + update + clear; }
    double fill_fraction() const noexcept { return total() > 0.0 ? fill / total() : 0.0; }
};

struct CombinedEstimate {
    double mean = 0.0;
    double variance = 0.0;
    double chi2_dof = 0.0;
};

struct IntegralOutcome {
    double mean = 0.0;
    double sigma = 0.0;
    double chi2_dof = 0.0;
    std::vector<IterationResult> iterations;
    PhaseTimes timing;
    std::size_t n_strat = 0;
    std::uint64_t n_cubes = 0;

    friend bool operator==(const IntegralOutcome& a, const IntegralOutcome& b) {
        auto same_iters = [&] {
            if (a.iterations.size() != b.iterations.size()) return false;
            for (std::size_t i = 0; i < a.iterations.size(); ++i) {
                const auto& x = a.iterations[i];
                const auto& y = b.iterations[i];
                if (x.index != y.index || x.estimate != y.estimate || x.variance != y.variance ||
                    x.included != y.included) {
                    return false;
                }
            }
            return true;
        };
        // Timing is measurement, not result.
        return a.mean == b.mean && a.sigma == b.sigma && a.chi2_dof == b.chi2_dof && a.n_strat == b.n_strat &&
               a.n_cubes == b.n_cubes && same_iters();
    }
};

/// State visible to an observer after each iteration's fill and result.
struct IterationSnapshot {
    const IterationResult& result;
    const VegasMap& map;          // map used for this iteration's samples
    const StratGrid& grid;        // allocation used for this iteration's samples
    const FillBuffers& buffers;   // merged accumulators of this iteration
};

using IterationObserver = std::function<void(const IterationSnapshot&)>;

/// Inverse-variance weighted mean of the included results:
/// mean = sum(I/s2) / sum(1/s2), variance = 1 / sum(1/s2),
/// chi2_dof = sum((I - mean)^2 / s2) / max(1, n - 1).
/// A zero-variance result is exact and short-circuits; two exact results that
/// disagree throw IntegrationError, as does an empty selection.
CombinedEstimate combine_iterations(std::span<const IterationResult> results);

/// Runs the adaptive loop: each iteration builds a run plan from the current
/// allocation, fills, reallocates evaluations across cubes, refines the map
/// and, past `skip`, records the iteration's estimate.
IntegralOutcome integrate(const Integrand& f, std::span<const Bounds> domain, const IntegratorConfig& cfg,
                          const IterationObserver& observer = {});

}  // namespace vegasplus
