#include "vegasplus/bench/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "vegasplus/errors.hpp"

namespace vegasplus::bench {

PhaseShares PhaseShares::of(const PhaseTimes& t) noexcept {
    const double total = t.total();
    if (!(total > 0.0)) return {};
    const double k = 100.0 / total;
    return {t.init * k, t.map * k, t.fill * k, t.update * k, t.clear * k};
}

namespace {

void add_scaled(PhaseTimes& into, const PhaseTimes& t, double k) {
    into.init += t.init * k;
    into.map += t.map * k;
    into.fill += t.fill * k;
    into.update += t.update * k;
    into.clear += t.clear * k;
}

}  // namespace

RunRecord run_benchmark(const RunRequest& request) {
    if (request.repeats == 0) throw InvalidConfig("repeats must be >= 1");
    const auto& spec = request.integrand;
    const auto f = spec.integrand();

    for (std::size_t i = 0; i < request.warmup; ++i) integrate(f, spec.domain, request.config);

    RunRecord rec;
    const double k = 1.0 / static_cast<double>(request.repeats);
    IntegralOutcome first;
    for (std::size_t i = 0; i < request.repeats; ++i) {
        const auto start = std::chrono::steady_clock::now();
        IntegralOutcome out = integrate(f, spec.domain, request.config);
        const auto stop = std::chrono::steady_clock::now();
        rec.wall_ms += std::chrono::duration<double, std::milli>(stop - start).count() * k;
        add_scaled(rec.phase_ms, out.timing, k);
        if (i == 0) first = std::move(out);
    }

    const auto& cfg = request.config;
    rec.integrand = spec.name;
    rec.config = request.config_name;
    rec.dims = spec.dims;
    rec.n_eval = cfg.n_eval;
    rec.workers = cfg.workers;
    rec.alpha = cfg.alpha;
    rec.beta = cfg.beta;
    rec.n_intervals = cfg.n_intervals;
    rec.n_strat = first.n_strat;
    rec.seed = cfg.seed;
    rec.repeats = request.repeats;
    rec.mean = first.mean;
    rec.sigma = first.sigma;
    rec.chi2_dof = first.chi2_dof;
    rec.rel_stderr = first.mean != 0.0 ? first.sigma / std::abs(first.mean) : 0.0;
    rec.reference = spec.reference_value;
    rec.fill_fraction = rec.phase_ms.fill_fraction();
    rec.phase_percent = PhaseShares::of(rec.phase_ms);
    rec.iterations = std::move(first.iterations);
    return rec;
}

std::vector<RunRecord> run_sweep(const SweepRequest& request, const SweepProgress& progress) {
    const auto& base = request.base;
    const std::vector<std::uint64_t> n_evals =
        request.n_evals.empty() ? std::vector<std::uint64_t>{base.config.n_eval} : request.n_evals;
    std::vector<std::size_t> workers =
        request.workers.empty() ? std::vector<std::size_t>{base.config.workers} : request.workers;
    const std::vector<double> betas = request.betas.empty() ? std::vector<double>{base.config.beta} : request.betas;
    std::ranges::sort(workers);

    std::vector<RunRecord> rows;
    rows.reserve(n_evals.size() * workers.size() * betas.size());
    for (std::uint64_t n_eval : n_evals) {
        for (double beta : betas) {
            double base_wall = 0.0;
            for (std::size_t w : workers) {
                RunRequest point = base;
                point.config.n_eval = n_eval;
                point.config.beta = beta;
                point.config.workers = w;
                if (request.intervals_follow_budget) point.config.n_intervals = tq_intervals(n_eval, base.integrand.dims);
                RunRecord rec = run_benchmark(point);
                if (w == workers.front()) base_wall = rec.wall_ms;
                rec.speedup = rec.wall_ms > 0.0 ? base_wall / rec.wall_ms : 1.0;
                rec.efficiency = rec.speedup * static_cast<double>(workers.front()) / static_cast<double>(w);
                if (progress) progress(rec);
                rows.push_back(std::move(rec));
            }
        }
    }
    return rows;
}

}  // namespace vegasplus::bench
