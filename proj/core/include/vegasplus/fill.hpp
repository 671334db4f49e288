#pragma once

#include <atomic>
#include <cstdint>

#include "vegasplus/importance_map.hpp"
#include "vegasplus/integrand.hpp"
#include "vegasplus/rng.hpp"
#include "vegasplus/stratification.hpp"

namespace vegasplus {

/// Half-open range of run indices [begin, end).
struct RunRange {
    std::uint64_t begin = 0;
    std::uint64_t end = 0;

    std::uint64_t size() const noexcept { return end - begin; }
    bool empty() const noexcept { return begin == end; }
    friend bool operator==(const RunRange&, const RunRange&) = default;
};

/// How runs draw their random numbers.
///
/// Run r reads stream (r mod batch_size) starting at position
/// offset + (r div batch_size) * dims, so its sample depends only on the
/// seed, the run index and the offset; never on which worker executes it.
struct StreamLayout {
    std::uint64_t seed = 0;
    std::uint64_t batch_size = 1;
    std::uint64_t offset = 0;

    std::uint64_t slot(std::uint64_t run) const noexcept { return run % batch_size; }
    std::uint64_t position(std::uint64_t run, std::size_t dims) const noexcept {
        return offset + (run / batch_size) * dims;
    }
    /// Offset after an iteration of total_runs runs has consumed its numbers.
    std::uint64_t advanced(std::uint64_t total_runs, std::size_t dims) const noexcept {
        return offset + ((total_runs + batch_size - 1) / batch_size) * dims;
    }
};

/// Accumulators produced by one fill: map weights plus per-cube sums.
struct FillBuffers {
    MapWeights map;
    CubeAccumulators cubes;

    FillBuffers() = default;
    FillBuffers(std::size_t dims, std::size_t n_intervals, std::uint64_t n_cubes)
        : map(dims, n_intervals), cubes(n_cubes) {}

    void add(const FillBuffers& other) {
        map.add(other.map);
        cubes.add(other.cubes);
    }
    void reset() noexcept {
        map.reset();
        cubes.reset();
    }
    friend bool operator==(const FillBuffers&, const FillBuffers&) = default;
};

/// Read-only state shared by every run of one iteration.
struct FillInputs {
    const RunPlan& plan;
    const VegasMap& map;
    const StratGrid& grid;
    StreamLayout streams;
    const Integrand& integrand;
};

/// Executes the runs in `range` and adds their contributions to `out`.
///
/// Each run samples a point uniformly inside its cube, pushes it through the
/// map, evaluates the integrand and accumulates J*f into the cube sums and
/// (J*f)^2 into the map weights. Throws IntegrandError on a non-finite value.
/// When `abort` is set by another worker the fill stops between blocks.
void fill_runs(const FillInputs& in, RunRange range, FillBuffers& out, const std::atomic<bool>* abort = nullptr);

/// Sequential fill over every planned run.
FillBuffers fill_iteration(const FillInputs& in);

}  // namespace vegasplus
