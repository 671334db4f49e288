// vegasplus: run one integration or a benchmark sweep and report the results
// as text, JSON or CSV.
//
//   vegasplus list
//   vegasplus run --integrand gaussian --n-eval 1e6 --seed 1 --format json
//   vegasplus sweep --integrand roos_arnold --from 1e6 --to 1e8 --format csv
//   vegasplus sweep --integrand ridge --n-eval 1e7 --workers 1,2,4,8
//
// Exit status: 0 on success, 1 when an integration fails, 2 on usage errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vegasplus/bench/configs.hpp"
#include "vegasplus/bench/harness.hpp"
#include "vegasplus/bench/report.hpp"
#include "vegasplus/errors.hpp"
#include "vegasplus/integrands.hpp"

namespace {

namespace vb = vegasplus::bench;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Options {
    std::string integrand = "linear";
    std::optional<std::size_t> dim;
    std::string config = "def";
    std::string n_eval = "1e6";
    std::optional<std::size_t> iterations;
    std::optional<std::size_t> skip;
    std::optional<double> alpha;
    std::optional<double> beta;
    std::optional<std::size_t> n_intervals;
    std::optional<std::size_t> n_strat;
    std::optional<std::string> batch_size;
    std::size_t workers = 1;
    std::uint64_t seed = 0;
    std::size_t repeats = 1;
    std::size_t warmup = 0;
    std::string format = "text";
    std::string out;

    // asian_option parameters
    std::optional<double> spot, strike, rate, volatility, maturity;
    // path_integral parameters
    std::optional<double> mass, time, x_end, box;
    std::optional<std::size_t> slices;

    // sweep only
    std::vector<std::string> n_evals;
    std::optional<std::string> from, to;
    std::vector<std::size_t> worker_list;
    std::vector<double> betas;
};

void add_common(CLI::App& cmd, Options& o) {
    cmd.add_option("--integrand", o.integrand, "Built-in integrand (see `list`)");
    cmd.add_option("--dim", o.dim, "Dimension, for integrands that allow it")->check(CLI::PositiveNumber);
    cmd.add_option("--config", o.config, "Parameter preset")->check(CLI::IsMember({"def", "vf", "tq"}));
    cmd.add_option("--iterations", o.iterations, "Adaptive iterations (max_it)")->check(CLI::PositiveNumber);
    cmd.add_option("--skip", o.skip, "Leading iterations left out of the result");
    cmd.add_option("--alpha", o.alpha, "Map damping exponent")->check(CLI::NonNegativeNumber);
    cmd.add_option("--n-intervals", o.n_intervals, "Map intervals per axis (N_g)");
    cmd.add_option("--n-strat", o.n_strat, "Strata per axis, overriding the budget-derived value")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--batch-size", o.batch_size, "Number of RNG slots (accepts 1e6 notation)");
    cmd.add_option("--seed", o.seed, "RNG seed");
    cmd.add_option("--repeats", o.repeats, "Timed repetitions")->check(CLI::PositiveNumber);
    cmd.add_option("--warmup", o.warmup, "Untimed runs before the timed ones");
    cmd.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
    cmd.add_option("--out", o.out, "Write the report to a file instead of stdout");

    auto* asian = "Asian option";
    cmd.add_option("--spot", o.spot, "Initial asset price")->group(asian);
    cmd.add_option("--strike", o.strike, "Strike price")->group(asian);
    cmd.add_option("--rate", o.rate, "Risk-free rate")->group(asian);
    cmd.add_option("--volatility", o.volatility, "Volatility")->group(asian);
    cmd.add_option("--maturity", o.maturity, "Time to maturity")->group(asian);

    auto* path = "Path integral";
    cmd.add_option("--mass", o.mass, "Particle mass")->group(path);
    cmd.add_option("--time", o.time, "Euclidean time extent T")->group(path);
    cmd.add_option("--slices", o.slices, "Lattice slices N (dimension N-1)")->group(path);
    cmd.add_option("--x-end", o.x_end, "Pinned endpoint position")->group(path);
    cmd.add_option("--box", o.box, "Interior coordinates range over [-box, box]")->group(path);
}

vegasplus::IntegrandSpec resolve_integrand(const Options& o) {
    const bool asian_flags = o.spot || o.strike || o.rate || o.volatility || o.maturity;
    const bool path_flags = o.mass || o.time || o.slices || o.x_end || o.box;
    if (asian_flags && o.integrand != "asian_option") {
        throw vegasplus::InvalidConfig("option-pricing flags need --integrand asian_option");
    }
    if (path_flags && o.integrand != "path_integral") {
        throw vegasplus::InvalidConfig("path-integral flags need --integrand path_integral");
    }

    if (o.integrand == "asian_option" && asian_flags) {
        vegasplus::AsianOption opt;
        if (o.dim) opt.steps = *o.dim;
        if (o.spot) opt.spot = *o.spot;
        if (o.strike) opt.strike = *o.strike;
        if (o.rate) opt.rate = *o.rate;
        if (o.volatility) opt.volatility = *o.volatility;
        if (o.maturity) opt.maturity = *o.maturity;
        return vegasplus::make_asian_option(opt);
    }
    if (o.integrand == "path_integral" && path_flags) {
        vegasplus::PathIntegral p;
        if (o.dim && o.slices && *o.dim + 1 != *o.slices) {
            throw vegasplus::InvalidConfig("--dim must equal --slices - 1 for path_integral");
        }
        if (o.dim) p.slices = *o.dim + 1;
        if (o.slices) p.slices = *o.slices;
        if (o.mass) p.mass = *o.mass;
        if (o.time) p.time = *o.time;
        if (o.x_end) p.x_end = *o.x_end;
        if (o.box) p.box = *o.box;
        return vegasplus::make_path_integral(p);
    }
    return o.dim ? vegasplus::lookup(o.integrand, *o.dim) : vegasplus::lookup(o.integrand);
}

vb::RunRequest build_request(const Options& o, std::uint64_t n_eval) {
    vb::RunRequest req;
    req.integrand = resolve_integrand(o);
    req.config_name = o.config;
    req.config = vb::make_config(vb::parse_named_config(o.config), n_eval, req.integrand.dims);
    auto& cfg = req.config;
    if (o.iterations) cfg.max_it = *o.iterations;
    if (o.skip) cfg.skip = *o.skip;
    if (o.alpha) cfg.alpha = *o.alpha;
    if (o.beta) cfg.beta = *o.beta;
    if (o.n_intervals) cfg.n_intervals = *o.n_intervals;
    if (o.n_strat) cfg.n_strat_override = *o.n_strat;
    if (o.batch_size) cfg.batch_size = vb::parse_count(*o.batch_size);
    cfg.workers = o.workers;
    cfg.seed = o.seed;
    cfg.validate();
    req.repeats = o.repeats;
    req.warmup = o.warmup;
    return req;
}

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream file(o.out, std::ios::binary);
    if (!file) throw vegasplus::InvalidConfig("cannot open '" + o.out + "' for writing");
    file << text;
    if (!file) throw vegasplus::InvalidConfig("failed writing '" + o.out + "'");
}

int do_list() {
    for (const auto& name : vegasplus::registered_names()) {
        const auto spec = vegasplus::lookup(name);
        std::printf("%-14s dims=%-3zu%s reference=%.15g (%s)\n", name.c_str(), spec.dims,
                    spec.variable_dims ? "*" : " ", spec.reference_value, spec.reference_note.c_str());
    }
    std::printf("(* = dimension adjustable with --dim)\n");
    return 0;
}

int do_run(const Options& o) {
    const auto req = build_request(o, vb::parse_count(o.n_eval));
    const auto rec = vb::run_benchmark(req);
    const std::vector<vb::RunRecord> rows{rec};
    if (o.format == "json") {
        emit(o, vb::to_json("run", rows));
    } else if (o.format == "csv") {
        emit(o, vb::to_csv(rows));
    } else {
        emit(o, vb::to_text(rec));
    }
    return 0;
}

int do_sweep(const Options& o) {
    vb::SweepRequest sweep;
    if (o.from || o.to) {
        if (!o.from || !o.to) throw vegasplus::InvalidConfig("--from and --to go together");
        if (!o.n_evals.empty()) throw vegasplus::InvalidConfig("use either --n-eval or --from/--to");
        sweep.n_evals = vb::doubling_schedule(vb::parse_count(*o.from), vb::parse_count(*o.to));
    } else {
        for (const auto& s : o.n_evals) sweep.n_evals.push_back(vb::parse_count(s));
    }
    if (sweep.n_evals.empty()) sweep.n_evals.push_back(vb::parse_count(o.n_eval));
    for (std::size_t w : o.worker_list) {
        if (w == 0) throw vegasplus::InvalidConfig("worker counts must be >= 1");
    }
    sweep.workers = o.worker_list;
    sweep.betas = o.betas;
    sweep.base = build_request(o, sweep.n_evals.front());
    sweep.intervals_follow_budget = o.config == "tq" && !o.n_intervals;
    for (auto n : sweep.n_evals) {
        auto probe = sweep.base.config;
        probe.n_eval = n;
        probe.validate();
    }

    const bool to_terminal = o.out.empty();
    const auto rows = vb::run_sweep(sweep, [&](const vb::RunRecord& r) {
        if (!to_terminal || o.format != "text") {
            std::fprintf(stderr, "done n_eval=%llu workers=%zu beta=%g wall=%.1f ms\n",
                         static_cast<unsigned long long>(r.n_eval), r.workers, r.beta, r.wall_ms);
        }
    });
    if (o.format == "json") {
        emit(o, vb::to_json("sweep", rows));
    } else if (o.format == "csv") {
        emit(o, vb::to_csv(rows));
    } else {
        emit(o, vb::to_text_table(rows));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"VEGAS+ adaptive Monte Carlo integration: single runs and benchmark sweeps"};
    app.require_subcommand(1);

    Options opts;
    app.add_subcommand("list", "List the built-in integrands");

    auto* run = app.add_subcommand("run", "Integrate once and report per-iteration results and timings");
    add_common(*run, opts);
    run->add_option("--n-eval", opts.n_eval, "Evaluations per iteration (e.g. 1e6)");
    run->add_option("--beta", opts.beta, "Stratification damping exponent")->check(CLI::NonNegativeNumber);
    run->add_option("--workers", opts.workers, "Worker threads")->check(CLI::PositiveNumber);

    auto* sweep = app.add_subcommand("sweep", "Run a grid of budgets, worker counts and betas");
    add_common(*sweep, opts);
    sweep->add_option("--n-eval", opts.n_evals, "Evaluations per iteration; repeatable or comma-separated")
        ->delimiter(',');
    sweep->add_option("--from", opts.from, "First budget of a doubling schedule");
    sweep->add_option("--to", opts.to, "Last budget of a doubling schedule (inclusive bound)");
    sweep->add_option("--workers", opts.worker_list, "Worker counts; comma-separated")->delimiter(',');
    sweep->add_option("--beta", opts.betas, "Stratification exponents; comma-separated")
        ->delimiter(',')
        ->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (app.got_subcommand("list")) return do_list();
        if (app.got_subcommand("run")) return do_run(opts);
        return do_sweep(opts);
    } catch (const vegasplus::InvalidConfig& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const vegasplus::InvalidDomain& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const vegasplus::NotFound& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const vegasplus::IntegrandError& e) {
        std::cerr << "integration failed: " << e.what() << "\n";
        return kExitFailure;
    } catch (const std::exception& e) {
        std::cerr << "integration failed: " << e.what() << "\n";
        return kExitFailure;
    }
}
