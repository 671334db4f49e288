#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "vegasplus/bench/configs.hpp"
#include "vegasplus/integrands.hpp"
#include "vegasplus/integrator.hpp"

namespace vegasplus::bench {

/// One benchmark point: an integrand, its settings and the timing protocol.
/// Every repeat uses the same seed, so repeats differ only in wall time.
struct RunRequest {
    IntegrandSpec integrand;
    std::string config_name = "def";
    IntegratorConfig config;
    std::size_t repeats = 1;
    std::size_t warmup = 0;
};

/// Phase times of one run as percentages of its total.
struct PhaseShares {
    double init = 0.0;
    double map = 0.0;
    double fill = 0.0;
    double update = 0.0;
    double clear = 0.0;

    static PhaseShares of(const PhaseTimes& t) noexcept;
    double sum() const noexcept { return init + map + fill + update + clear; }
};

struct RunRecord {
    std::string integrand;
    std::string config;
    std::size_t dims = 0;
    std::uint64_t n_eval = 0;
    std::size_t workers = 1;
    double alpha = 0.0;
    double beta = 0.0;
    std::size_t n_intervals = 0;
    std::size_t n_strat = 0;
    std::uint64_t seed = 0;
    std::size_t repeats = 1;

    double mean = 0.0;
    double sigma = 0.0;
    double chi2_dof = 0.0;
    double rel_stderr = 0.0;  // sigma / |mean|, 0 when mean is 0
    double reference = 0.0;

    double wall_ms = 0.0;        // mean over repeats, excluding warm-up runs
    double fill_fraction = 0.0;  // from the mean phase times
    double speedup = 1.0;        // against the fewest-workers point of a sweep
    double efficiency = 1.0;     // speedup scaled by the worker ratio

    PhaseTimes phase_ms;  // mean over repeats
    PhaseShares phase_percent;
    std::vector<IterationResult> iterations;
};

/// Runs warm-up then measured integrations and summarizes them.
RunRecord run_benchmark(const RunRequest& request);

/// Cartesian product of budgets, worker counts and betas around one request.
/// Empty lists mean "keep the request's value".
struct SweepRequest {
    RunRequest base;
    bool intervals_follow_budget = false;  // recompute the tq grid size for each n_eval
    std::vector<std::uint64_t> n_evals;
    std::vector<std::size_t> workers;
    std::vector<double> betas;
};

/// Called after each finished point, e.g. for progress output.
using SweepProgress = std::function<void(const RunRecord&)>;

/// Rows ordered by n_eval, then beta, then workers. Speedup and efficiency
/// are filled in per (n_eval, beta) group relative to its fewest workers.
std::vector<RunRecord> run_sweep(const SweepRequest& request, const SweepProgress& progress = {});

}  // namespace vegasplus::bench
