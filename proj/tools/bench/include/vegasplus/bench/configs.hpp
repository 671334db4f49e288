#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "vegasplus/integrator.hpp"

namespace vegasplus::bench {

/// Preset parameter sets. `def` is the general-purpose default, `vf` uses a
/// coarse grid with strong damping, and `tq` derives the grid size from the
/// evaluation budget.
enum class NamedConfig { def, vf, tq };

NamedConfig parse_named_config(std::string_view name);
std::string_view to_string(NamedConfig config) noexcept;

/// Grid size used by `tq`: clamp(floor(n_eval^(1/(2 dims)) * 10), 10, 1024).
std::size_t tq_intervals(std::uint64_t n_eval, std::size_t dims);

/// Integrator settings for a preset at a given budget and dimension. Fields a
/// preset does not fix (seed, workers, cube cap) keep their library defaults.
IntegratorConfig make_config(NamedConfig config, std::uint64_t n_eval, std::size_t dims);

/// Parses an evaluation count written as an integer or in scientific
/// notation ("1000000", "1e6", "2.5e5"). Throws InvalidConfig unless the
/// value is a positive whole number below 2^63.
std::uint64_t parse_count(std::string_view text);

/// from, 2 from, 4 from, ... keeping every value that does not exceed `to`.
std::vector<std::uint64_t> doubling_schedule(std::uint64_t from, std::uint64_t to);

}  // namespace vegasplus::bench
