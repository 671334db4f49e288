#include "vegasplus/bench/report.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

#include <json.hpp>

namespace vegasplus::bench {

namespace {

using nlohmann::ordered_json;

std::string format(const char* fmt, auto... args) {
    const int n = std::snprintf(nullptr, 0, fmt, args...);
    std::string out(static_cast<std::size_t>(n), '\0');
    std::snprintf(out.data(), out.size() + 1, fmt, args...);
    return out;
}

std::string real(double v) { return format("%.17g", v); }

ordered_json phases(const PhaseTimes& t) {
    return {{"init", t.init}, {"map", t.map}, {"fill", t.fill}, {"update", t.update}, {"clear", t.clear}};
}

ordered_json shares(const PhaseShares& s) {
    return {{"init", s.init}, {"map", s.map}, {"fill", s.fill}, {"update", s.update}, {"clear", s.clear}};
}

ordered_json record_json(const RunRecord& r) {
    ordered_json iterations = ordered_json::array();
    for (const auto& it : r.iterations) {
        iterations.push_back({{"index", it.index},
                              {"estimate", it.estimate},
                              {"sigma", it.sigma()},
                              {"included", it.included}});
    }
    return {{"integrand", r.integrand},
            {"config", r.config},
            {"dims", r.dims},
            {"n_eval", r.n_eval},
            {"workers", r.workers},
            {"alpha", r.alpha},
            {"beta", r.beta},
            {"n_intervals", r.n_intervals},
            {"n_strat", r.n_strat},
            {"seed", r.seed},
            {"repeats", r.repeats},
            {"mean", r.mean},
            {"sigma", r.sigma},
            {"chi2_dof", r.chi2_dof},
            {"rel_stderr", r.rel_stderr},
            {"reference", r.reference},
            {"wall_ms", r.wall_ms},
            {"fill_fraction", r.fill_fraction},
            {"speedup", r.speedup},
            {"efficiency", r.efficiency},
            {"phase_ms", phases(r.phase_ms)},
            {"phase_percent", shares(r.phase_percent)},
            {"iterations", std::move(iterations)}};
}

}  // namespace

std::string to_json(std::string_view kind, std::span<const RunRecord> records, int indent) {
    ordered_json doc = {{"schema", kReportSchemaVersion}, {"kind", kind}, {"records", ordered_json::array()}};
    for (const auto& r : records) doc["records"].push_back(record_json(r));
    return doc.dump(indent) + "\n";
}

std::string to_csv(std::span<const RunRecord> records) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto& r : records) {
        out += r.integrand + ',' + r.config + ',' + std::to_string(r.n_eval) + ',' + std::to_string(r.workers) + ',' +
               real(r.beta) + ',' + real(r.mean) + ',' + real(r.sigma) + ',' + real(r.rel_stderr) + ',' +
               real(r.wall_ms) + ',' + real(r.fill_fraction) + ',' + real(r.speedup) + ',' + real(r.efficiency) +
               '\n';
    }
    return out;
}

std::string to_text(const RunRecord& r) {
    std::string out = format("%s  dims=%zu  config=%s  n_eval=%llu  workers=%zu  N_g=%zu  n_strat=%zu  alpha=%g  beta=%g\n",
                             r.integrand.c_str(), r.dims, r.config.c_str(), static_cast<unsigned long long>(r.n_eval),
                             r.workers, r.n_intervals, r.n_strat, r.alpha, r.beta);
    out += "  it            estimate               sigma\n";
    for (const auto& it : r.iterations) {
        out += format("%4zu%s %19.12g %19.6g\n", it.index, it.included ? " " : "*", it.estimate, it.sigma());
    }
    if (std::ranges::any_of(r.iterations, [](const IterationResult& it) { return !it.included; })) {
        out += "  (* = skipped)\n";
    }
    out += format("result    %.12g +- %.6g  (rel %.3g, chi2/dof %.3g)\n", r.mean, r.sigma, r.rel_stderr, r.chi2_dof);
    if (r.reference != 0.0) {
        const double pull = r.sigma > 0.0 ? (r.mean - r.reference) / r.sigma : 0.0;
        out += format("reference %.12g  (pull %+.2f)\n", r.reference, pull);
    }
    out += format("wall      %.3f ms  (mean of %zu)\n", r.wall_ms, r.repeats);
    const auto& p = r.phase_percent;
    out += format("phases    init %.1f%%  map %.1f%%  fill %.1f%%  update %.1f%%  clear %.1f%%\n", p.init, p.map, p.fill,
                  p.update, p.clear);
    return out;
}

std::string to_text_table(std::span<const RunRecord> records) {
    std::string out = format("%-14s %-4s %12s %7s %6s %20s %12s %10s %12s %7s %8s %6s\n", "integrand", "cfg", "n_eval",
                             "workers", "beta", "mean", "sigma", "rel_err", "wall_ms", "fill%", "speedup", "eff");
    for (const auto& r : records) {
        out += format("%-14s %-4s %12llu %7zu %6.3g %20.12g %12.4g %10.3g %12.3f %7.2f %8.3f %6.3f\n",
                      r.integrand.c_str(), r.config.c_str(), static_cast<unsigned long long>(r.n_eval), r.workers,
                      r.beta, r.mean, r.sigma, r.rel_stderr, r.wall_ms, 100.0 * r.fill_fraction, r.speedup,
                      r.efficiency);
    }
    return out;
}

}  // namespace vegasplus::bench
