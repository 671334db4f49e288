#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "vegasplus/bench/configs.hpp"
#include "vegasplus/bench/harness.hpp"
#include "vegasplus/bench/report.hpp"
#include "vegasplus/errors.hpp"

namespace vegasplus::bench {
namespace {

TEST(ParseCount, AcceptedForms) {
    EXPECT_EQ(parse_count("1000000"), 1'000'000u);
    EXPECT_EQ(parse_count("1e6"), 1'000'000u);
    EXPECT_EQ(parse_count("2.5e5"), 250'000u);
    EXPECT_EQ(parse_count("4"), 4u);
}

TEST(ParseCount, RejectedForms) {
    for (const char* bad : {"", "0", "-5", "1.5", "abc", "1e6x", "1e30", "nan", "inf", "2.5e0"}) {
        EXPECT_THROW(parse_count(bad), InvalidConfig) << bad;
    }
}

TEST(DoublingSchedule, StopsAtUpperBound) {
    EXPECT_EQ(doubling_schedule(1, 8), (std::vector<std::uint64_t>{1, 2, 4, 8}));
    EXPECT_EQ(doubling_schedule(3, 20), (std::vector<std::uint64_t>{3, 6, 12}));
    EXPECT_EQ(doubling_schedule(5, 5), (std::vector<std::uint64_t>{5}));
    EXPECT_THROW(doubling_schedule(6, 5), InvalidConfig);
    EXPECT_THROW(doubling_schedule(0, 5), InvalidConfig);
}

TEST(NamedConfigs, RoundTripAndErrors) {
    for (auto c : {NamedConfig::def, NamedConfig::vf, NamedConfig::tq}) EXPECT_EQ(parse_named_config(to_string(c)), c);
    EXPECT_THROW(parse_named_config("fast"), InvalidConfig);
}

TEST(NamedConfigs, Presets) {
    const auto def = make_config(NamedConfig::def, 1'000'000, 10);
    EXPECT_EQ(def.n_eval, 1'000'000u);
    EXPECT_EQ(def.max_it, 20u);
    EXPECT_EQ(def.skip, 0u);
    EXPECT_EQ(def.n_intervals, 1024u);
    EXPECT_EQ(def.alpha, 0.5);
    EXPECT_EQ(def.beta, 0.75);
    EXPECT_EQ(def.batch_size, 1'048'576u);

    const auto vf = make_config(NamedConfig::vf, 1'000'000, 10);
    EXPECT_EQ(vf.n_intervals, 50u);
    EXPECT_EQ(vf.alpha, 1.5);

    EXPECT_EQ(make_config(NamedConfig::tq, 1'000'000, 10).n_intervals, tq_intervals(1'000'000, 10));
}

TEST(NamedConfigs, TqIntervals) {
    EXPECT_EQ(tq_intervals(1'000'000, 1), 1024u);      // 1000 * 10, clamped
    EXPECT_EQ(tq_intervals(1'000'000, 3), 100u);       // 10^1 * 10
    EXPECT_EQ(tq_intervals(10'000, 2), 100u);          // 10 * 10
    EXPECT_EQ(tq_intervals(1'000'000, 10), 19u);       // 10^0.3 * 10 = 19.95
    EXPECT_EQ(tq_intervals(4, 50), 10u);               // clamped from below
}

RunRequest small_request() {
    RunRequest req;
    req.integrand = lookup("cosine", 3);
    req.config_name = "def";
    req.config = make_config(NamedConfig::def, 20'000, 3);
    req.config.max_it = 5;
    req.config.skip = 1;
    req.config.n_intervals = 64;
    req.config.seed = 4;
    return req;
}

TEST(Harness, RecordFields) {
    auto req = small_request();
    req.repeats = 2;
    req.warmup = 1;
    const auto rec = run_benchmark(req);
    EXPECT_EQ(rec.integrand, "cosine");
    EXPECT_EQ(rec.config, "def");
    EXPECT_EQ(rec.dims, 3u);
    EXPECT_EQ(rec.repeats, 2u);
    EXPECT_EQ(rec.iterations.size(), 5u);
    EXPECT_NEAR(rec.mean, rec.reference, 5.0 * rec.sigma);
    EXPECT_DOUBLE_EQ(rec.rel_stderr, rec.sigma / std::abs(rec.mean));
    EXPECT_NEAR(rec.phase_percent.sum(), 100.0, 1e-9);
    EXPECT_NEAR(rec.fill_fraction, rec.phase_ms.fill_fraction(), 1e-12);
    EXPECT_GT(rec.wall_ms, 0.0);
}

TEST(Harness, PhaseSharesOfZeroTimes) {
    const auto shares = PhaseShares::of(PhaseTimes{});
    EXPECT_EQ(shares.sum(), 0.0);
}

TEST(Harness, SweepOrderAndSpeedup) {
    SweepRequest req;
    req.base = small_request();
    req.n_evals = {10'000, 20'000};
    req.workers = {2, 1};
    req.betas = {0.0, 0.75};
    std::size_t calls = 0;
    const auto rows = run_sweep(req, [&](const RunRecord&) { ++calls; });
    ASSERT_EQ(rows.size(), 8u);
    EXPECT_EQ(calls, 8u);
    for (std::size_t i = 0; i < rows.size(); i += 2) {
        EXPECT_EQ(rows[i].workers, 1u);
        EXPECT_EQ(rows[i + 1].workers, 2u);
        EXPECT_EQ(rows[i].n_eval, rows[i + 1].n_eval);
        EXPECT_EQ(rows[i].beta, rows[i + 1].beta);
        EXPECT_EQ(rows[i].speedup, 1.0);
        EXPECT_NEAR(rows[i + 1].efficiency, rows[i + 1].speedup / 2.0, 1e-12);
    }
    EXPECT_EQ(rows[0].n_eval, 10'000u);
    EXPECT_EQ(rows[0].beta, 0.0);
    EXPECT_EQ(rows[2].beta, 0.75);
    EXPECT_EQ(rows[4].n_eval, 20'000u);
}

TEST(Harness, TqSweepFollowsBudget) {
    SweepRequest req;
    req.base = small_request();
    req.base.config_name = "tq";
    req.intervals_follow_budget = true;
    req.base.config.max_it = 2;
    req.base.config.skip = 0;
    req.n_evals = {1'000, 64'000};
    const auto rows = run_sweep(req);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].n_intervals, tq_intervals(1'000, 3));
    EXPECT_EQ(rows[1].n_intervals, tq_intervals(64'000, 3));
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, sep)) out.push_back(field);
    return out;
}

TEST(Report, CsvAndJsonCarryTheSameValues) {
    SweepRequest req;
    req.base = small_request();
    req.workers = {1, 2};
    const auto rows = run_sweep(req);

    const auto csv = to_csv(rows);
    std::stringstream lines(csv);
    std::string header;
    std::getline(lines, header);
    EXPECT_EQ(header, kCsvHeader);
    const auto columns = split(header, ',');

    const auto json = nlohmann::json::parse(to_json("sweep", rows));
    EXPECT_EQ(json["schema"], kReportSchemaVersion);
    EXPECT_EQ(json["kind"], "sweep");
    ASSERT_EQ(json["records"].size(), rows.size());

    std::string line;
    for (std::size_t i = 0; std::getline(lines, line); ++i) {
        const auto fields = split(line, ',');
        ASSERT_EQ(fields.size(), columns.size());
        const auto& rec = json["records"][i];
        for (std::size_t c = 0; c < columns.size(); ++c) {
            const auto& value = rec.at(columns[c]);
            if (value.is_string()) {
                EXPECT_EQ(fields[c], value.get<std::string>());
            } else {
                EXPECT_EQ(std::stod(fields[c]), value.get<double>()) << columns[c];
            }
        }
    }
}

TEST(Report, JsonPhasesAndIterations) {
    const auto rec = run_benchmark(small_request());
    const std::vector<RunRecord> rows = {rec};
    const auto json = nlohmann::json::parse(to_json("run", rows));
    const auto& r = json["records"][0];
    double sum = 0.0;
    for (const auto& [name, value] : r["phase_percent"].items()) sum += value.get<double>();
    EXPECT_NEAR(sum, 100.0, 1e-9);
    ASSERT_EQ(r["iterations"].size(), rec.iterations.size());
    EXPECT_EQ(r["iterations"][0]["included"], false);
    EXPECT_EQ(r["iterations"][1]["included"], true);
    EXPECT_EQ(r["mean"].get<double>(), rec.mean);
}

TEST(Report, TextMentionsResult) {
    const auto rec = run_benchmark(small_request());
    const auto text = to_text(rec);
    EXPECT_NE(text.find("cosine"), std::string::npos);
    EXPECT_NE(text.find("skipped"), std::string::npos);
    const std::vector<RunRecord> rows = {rec, rec};
    const auto table = to_text_table(rows);
    EXPECT_GE(std::ranges::count(table, '\n'), 2);
}

}  // namespace
}  // namespace vegasplus::bench
