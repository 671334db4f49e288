#include "vegasplus/parallel_executor.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace vegasplus {

std::vector<RunRange> partition_runs(std::uint64_t total, std::size_t k) {
    if (k == 0) throw ContractViolation("partition_runs: need at least one part");
    const std::uint64_t base = total / k;
    const std::uint64_t extra = total % k;
    std::vector<RunRange> out(k);
    std::uint64_t start = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const std::uint64_t len = base + (i < extra ? 1 : 0);
        out[i] = {start, start + len};
        start += len;
    }
    return out;
}

std::vector<WorkerShard> make_shards(std::uint64_t total_runs, std::size_t workers) {
    const auto ranges = partition_runs(total_runs, workers);
    std::vector<WorkerShard> shards(workers);
    for (std::size_t w = 0; w < workers; ++w) shards[w] = {w, ranges[w]};
    return shards;
}

std::size_t tree_levels(std::size_t n) noexcept {
    std::size_t levels = 0;
    for (std::size_t span = 1; span < n; span *= 2) ++levels;
    return levels;
}

ParallelExecutor::ParallelExecutor(std::size_t workers) : workers_(workers) {
    if (workers == 0) throw InvalidConfig("executor: workers must be >= 1");
}

void ParallelExecutor::prepare(std::size_t dims, std::size_t n_intervals, std::uint64_t n_cubes) {
    const bool reuse = buffers_.size() == workers_ && buffers_.front().map.dims() == dims &&
                       buffers_.front().map.n_intervals() == n_intervals && buffers_.front().cubes.size() == n_cubes;
    if (reuse) {
        for (auto& b : buffers_) b.reset();
    } else {
        buffers_.clear();
        for (std::size_t w = 0; w < workers_; ++w) buffers_.emplace_back(dims, n_intervals, n_cubes);
    }
    prepared_ = true;
}

const FillBuffers& ParallelExecutor::fill(const RunPlan& plan, const VegasMap& map, const StratGrid& grid,
                                          const StreamLayout& streams, const Integrand& integrand) {
    if (streams.batch_size == 0) throw InvalidConfig("executor: batch_size must be >= 1");
    if (!prepared_ || buffers_.front().cubes.size() != plan.n_cubes() ||
        buffers_.front().map.dims() != map.dims() || buffers_.front().map.n_intervals() != map.n_intervals()) {
        throw InternalError("executor: fill() without a matching prepare()");
    }
    prepared_ = false;

    const FillInputs inputs{plan, map, grid, streams, integrand};
    if (workers_ == 1) {
        fill_runs(inputs, {0, plan.total_runs()}, buffers_.front());
        return buffers_.front();
    }

    std::atomic<bool> abort{false};
    std::mutex error_lock;
    std::exception_ptr first_error;
    {
        std::vector<std::jthread> threads;
        threads.reserve(workers_);
        for (const auto& shard : make_shards(plan.total_runs(), workers_)) {
            threads.emplace_back([&, shard] {
                try {
                    fill_runs(inputs, shard.runs, buffers_[shard.worker], &abort);
                } catch (...) {
                    abort.store(true, std::memory_order_relaxed);
                    std::scoped_lock guard(error_lock);
                    if (!first_error) first_error = std::current_exception();
                }
            });
        }
    }
    if (first_error) std::rethrow_exception(first_error);

    tree_reduce_in_place(std::span<FillBuffers>(buffers_));
    return buffers_.front();
}

FillBuffers parallel_fill(const RunPlan& plan, const VegasMap& map, const StratGrid& grid, const ExecutorConfig& cfg,
                          const Integrand& integrand) {
    ParallelExecutor executor(cfg.workers);
    executor.prepare(map.dims(), map.n_intervals(), plan.n_cubes());
    return executor.fill(plan, map, grid, cfg.streams, integrand);
}

}  // namespace vegasplus
