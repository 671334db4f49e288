#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "vegasplus/errors.hpp"
#include "vegasplus/fill.hpp"

namespace vegasplus {

/// k contiguous ranges covering [0, total); sizes are floor(total/k) or
/// ceil(total/k), the larger ones first.
std::vector<RunRange> partition_runs(std::uint64_t total, std::size_t k);

/// One worker's slice of an iteration.
struct WorkerShard {
    std::size_t worker = 0;
    RunRange runs;

    /// First RNG slot touched and how many distinct slots the shard reads.
    std::uint64_t first_stream(const StreamLayout& layout) const noexcept { return layout.slot(runs.begin); }
    std::uint64_t stream_count(const StreamLayout& layout) const noexcept {
        return runs.size() < layout.batch_size ? runs.size() : layout.batch_size;
    }
};

std::vector<WorkerShard> make_shards(std::uint64_t total_runs, std::size_t workers);

/// Number of pairwise levels used to merge n buffers: ceil(log2 n).
std::size_t tree_levels(std::size_t n) noexcept;

/// In-place variant of tree_reduce; the result ends up in buffers[0].
template <typename Buffer>
void tree_reduce_in_place(std::span<Buffer> buffers) {
    if (buffers.empty()) throw InternalError("tree_reduce: no buffers");
    for (std::size_t stride = 1; stride < buffers.size(); stride *= 2) {
        for (std::size_t i = 0; i + stride < buffers.size(); i += 2 * stride) {
            buffers[i].add(buffers[i + stride]);
        }
    }
}

/// Merges buffers by adding adjacent pairs left to right, level by level:
/// n=5 merges (0,1)(2,3)(4), then (01,23)(4), then (0123,4). The shape of the
/// tree depends only on n, so the floating-point result does too.
/// `Buffer` must provide `void add(const Buffer&)`.
template <typename Buffer>
Buffer tree_reduce(std::vector<Buffer> buffers) {
    tree_reduce_in_place(std::span<Buffer>(buffers));
    return std::move(buffers.front());
}

struct ExecutorConfig {
    std::size_t workers = 1;
    StreamLayout streams;
};

/// Runs fills over a fixed number of workers, keeping one private buffer set
/// per worker between iterations.
///
/// Each worker fills a contiguous shard of runs; the buffers are then merged
/// with tree_reduce in worker order. The first error raised by any worker
/// cancels the others and is rethrown on the calling thread.
class ParallelExecutor {
public:
    explicit ParallelExecutor(std::size_t workers);

    std::size_t workers() const noexcept { return workers_; }

    /// Allocates zeroed per-worker buffers, or zeroes existing ones of the same shape.
    void prepare(std::size_t dims, std::size_t n_intervals, std::uint64_t n_cubes);

    /// Fills into buffers zeroed by prepare(); returns the merged result,
    /// valid until the next prepare().
    const FillBuffers& fill(const RunPlan& plan, const VegasMap& map, const StratGrid& grid,
                            const StreamLayout& streams, const Integrand& integrand);

    void release() noexcept {
        buffers_.clear();
        buffers_.shrink_to_fit();
        prepared_ = false;
    }

private:
    std::size_t workers_;
    std::vector<FillBuffers> buffers_;
    bool prepared_ = false;
};

/// One-shot parallel fill of every planned run.
FillBuffers parallel_fill(const RunPlan& plan, const VegasMap& map, const StratGrid& grid, const ExecutorConfig& cfg,
                          const Integrand& integrand);

}  // namespace vegasplus
