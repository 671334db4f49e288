#pragma once

#include <span>
#include <string>
#include <string_view>

#include "vegasplus/bench/harness.hpp"

namespace vegasplus::bench {

inline constexpr int kReportSchemaVersion = 1;

/// Header of every CSV report, in column order.
inline constexpr std::string_view kCsvHeader =
    "integrand,config,n_eval,workers,beta,mean,sigma,rel_stderr,wall_ms,fill_fraction,speedup,efficiency";

/// {"schema": 1, "kind": kind, "records": [...]}; each record carries the
/// summary fields, the phase breakdown and the per-iteration results.
std::string to_json(std::string_view kind, std::span<const RunRecord> records, int indent = 2);

/// Header plus one row per record. Reals are printed with 17 significant
/// digits so they parse back to the same doubles as the JSON values.
std::string to_csv(std::span<const RunRecord> records);

/// Human-readable report of one run: iterations, result, phase breakdown.
std::string to_text(const RunRecord& record);

/// One line per record for sweeps.
std::string to_text_table(std::span<const RunRecord> records);

}  // namespace vegasplus::bench
