#include "vegasplus/integrator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "vegasplus/errors.hpp"
#include "vegasplus/parallel_executor.hpp"

namespace vegasplus {

void IntegratorConfig::validate() const {
    if (n_eval < 4) throw InvalidConfig("n_eval must be >= 4");
    if (max_it == 0 || skip >= max_it) throw InvalidConfig("need max_it > skip >= 0");
    if (batch_size == 0) throw InvalidConfig("batch_size must be >= 1");
    if (n_intervals < 2) throw InvalidConfig("n_intervals must be >= 2");
    if (n_intervals > (std::size_t{1} << 31)) throw InvalidConfig("n_intervals too large");
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw InvalidConfig("alpha must be finite and >= 0");
    if (!(beta >= 0.0) || !std::isfinite(beta)) throw InvalidConfig("beta must be finite and >= 0");
    if (workers == 0) throw InvalidConfig("workers must be >= 1");
    if (cube_cap == 0) throw InvalidConfig("cube_cap must be >= 1");
    if (n_strat_override && *n_strat_override == 0) throw InvalidConfig("n_strat must be >= 1");
}

double IterationResult::sigma() const { return std::sqrt(variance); }

CombinedEstimate combine_iterations(std::span<const IterationResult> results) {
    std::vector<const IterationResult*> used;
    for (const auto& r : results) {
        if (r.included) used.push_back(&r);
    }
    if (used.empty()) throw IntegrationError("no included iterations to combine");

    const double dof = std::max<double>(1.0, static_cast<double>(used.size()) - 1.0);
    CombinedEstimate out;

    const IterationResult* exact = nullptr;
    for (const auto* r : used) {
        if (r->variance < 0.0 || !std::isfinite(r->variance)) {
            throw IntegrationError("iteration " + std::to_string(r->index) + " has an invalid variance");
        }
        if (r->variance != 0.0) continue;
        if (exact == nullptr) {
            exact = r;
            continue;
        }
        const double scale = std::max(std::abs(exact->estimate), std::abs(r->estimate));
        if (std::abs(exact->estimate - r->estimate) > 1e-12 * scale) {
            throw IntegrationError("iterations " + std::to_string(exact->index) + " and " + std::to_string(r->index) +
                                   " report different exact estimates");
        }
    }

    if (exact != nullptr) {
        out.mean = exact->estimate;
        out.variance = 0.0;
        double chi2 = 0.0;
        for (const auto* r : used) {
            if (r->variance > 0.0) chi2 += (r->estimate - out.mean) * (r->estimate - out.mean) / r->variance;
        }
        out.chi2_dof = chi2 / dof;
        return out;
    }

    // Extended accumulators: the sums are short, and the extra bits keep the
    // result permutation-independent and the variance at or below each input's.
    long double weight_sum = 0.0L;
    long double weighted = 0.0L;
    for (const auto* r : used) {
        weight_sum += 1.0L / r->variance;
        weighted += static_cast<long double>(r->estimate) / r->variance;
    }
    const long double mean = weighted / weight_sum;
    long double chi2 = 0.0L;
    for (const auto* r : used) chi2 += (r->estimate - mean) * (r->estimate - mean) / r->variance;
    out.mean = static_cast<double>(mean);
    out.variance = static_cast<double>(1.0L / weight_sum);
    out.chi2_dof = static_cast<double>(chi2 / dof);
    return out;
}

namespace {

using Clock = std::chrono::steady_clock;

class PhaseClock {
public:
    explicit PhaseClock(double& bucket) : bucket_(bucket), start_(Clock::now()) {}
    ~PhaseClock() { bucket_ += std::chrono::duration<double, std::milli>(Clock::now() - start_).count(); }
    PhaseClock(const PhaseClock&) = delete;
    PhaseClock& operator=(const PhaseClock&) = delete;

private:
    double& bucket_;
    Clock::time_point start_;
};

}  // namespace

IntegralOutcome integrate(const Integrand& f, std::span<const Bounds> domain, const IntegratorConfig& cfg,
                          const IterationObserver& observer) {
    IntegralOutcome outcome;
    PhaseTimes& t = outcome.timing;

    std::optional<VegasMap> map;
    std::optional<StratGrid> grid;
    std::optional<ParallelExecutor> executor;
    std::size_t dims = 0;
    {
        PhaseClock clock(t.init);
        cfg.validate();
        if (!f) throw InvalidConfig("integrand is empty");
        dims = domain.size();
        map = VegasMap::uniform(dims, cfg.n_intervals, domain);
        const std::size_t n_strat =
            cfg.n_strat_override ? *cfg.n_strat_override : compute_n_strat(cfg.n_eval, dims, cfg.cube_cap);
        grid.emplace(dims, n_strat, cfg.n_eval);
        executor.emplace(cfg.workers);
        outcome.n_strat = grid->n_strat();
        outcome.n_cubes = grid->n_cubes();
        outcome.iterations.reserve(cfg.max_it);
    }

    StreamLayout streams{cfg.seed, cfg.batch_size, 0};
    RunPlan plan;
    IterationEstimate estimate;

    for (std::size_t it = 1; it <= cfg.max_it; ++it) {
        {
            PhaseClock clock(t.update);
            executor->prepare(dims, cfg.n_intervals, grid->n_cubes());
        }
        {
            PhaseClock clock(t.map);
            plan.rebuild(grid->evals_per_cube());
        }
        const FillBuffers* buffers = nullptr;
        {
            PhaseClock clock(t.fill);
            buffers = &executor->fill(plan, *map, *grid, streams, f);
        }
        {
            PhaseClock clock(t.update);
            streams.offset = streams.advanced(plan.total_runs(), dims);

            compute_results(buffers->cubes, grid->cube_volume(), estimate);
            IterationResult result{it, estimate.integral, estimate.variance, it > cfg.skip};
            if (observer) observer(IterationSnapshot{result, *map, *grid, *buffers});
            outcome.iterations.push_back(result);

            grid->reallocate(std::move(estimate.spread), cfg.beta);
            map = update_grid(*map, smooth_and_damp(buffers->map, cfg.alpha));
        }
    }

    {
        PhaseClock clock(t.update);
        const CombinedEstimate combined = combine_iterations(outcome.iterations);
        outcome.mean = combined.mean;
        outcome.sigma = std::sqrt(combined.variance);
        outcome.chi2_dof = combined.chi2_dof;
    }
    {
        PhaseClock clock(t.clear);
        executor.reset();
        grid.reset();
        map.reset();
        plan = RunPlan();
        estimate = IterationEstimate();
    }
    return outcome;
}

}  // namespace vegasplus
