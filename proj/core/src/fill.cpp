#include "vegasplus/fill.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "vegasplus/errors.hpp"

namespace vegasplus {

namespace {

constexpr std::uint64_t kBlockRuns = 256;
constexpr double kBelowOne = 0x1.fffffffffffffp-1;

}  // namespace

void fill_runs(const FillInputs& in, RunRange range, FillBuffers& out, const std::atomic<bool>* abort) {
    if (range.empty()) return;
    if (range.end > in.plan.total_runs()) throw ContractViolation("fill_runs: range exceeds the run plan");

    const std::size_t dims = in.map.dims();
    const std::size_t n_strat = in.grid.n_strat();
    const double inv_strat = 1.0 / static_cast<double>(n_strat);

    std::vector<double> points(kBlockRuns * dims);
    std::vector<double> y(dims);
    std::vector<double> origin_digits(dims);
    std::vector<std::uint32_t> idx(kBlockRuns * dims);
    std::vector<double> jac(kBlockRuns);
    std::vector<double> values(kBlockRuns);
    std::vector<std::uint64_t> cube(kBlockRuns);

    RngStream stream(in.streams.seed, 0);
    std::uint64_t h = in.plan.run_to_cube(range.begin);
    std::uint64_t current_origin = ~std::uint64_t{0};

    for (std::uint64_t block_begin = range.begin; block_begin < range.end; block_begin += kBlockRuns) {
        if (abort != nullptr && abort->load(std::memory_order_relaxed)) return;
        const std::uint64_t block_end = std::min(range.end, block_begin + kBlockRuns);
        const std::size_t count = static_cast<std::size_t>(block_end - block_begin);

        for (std::size_t k = 0; k < count; ++k) {
            const std::uint64_t r = block_begin + k;
            while (r >= in.plan.end(h)) ++h;
            if (h != current_origin) {
                // Digits of h in base n_strat, axis 0 least significant.
                std::uint64_t rest = h;
                for (auto& digit : origin_digits) {
                    digit = static_cast<double>(rest % n_strat);
                    rest /= n_strat;
                }
                current_origin = h;
            }
            stream.reposition(in.streams.slot(r), in.streams.position(r, dims));
            for (std::size_t d = 0; d < dims; ++d) {
                y[d] = std::min((origin_digits[d] + stream.next_uniform()) * inv_strat, kBelowOne);
            }
            std::span<double> x(points.data() + k * dims, dims);
            std::span<std::uint32_t> ix(idx.data() + k * dims, dims);
            jac[k] = in.map.transform_unchecked(y, x, ix);
            cube[k] = h;
        }

        in.integrand.evaluate(std::span<const double>(points.data(), count * dims), dims,
                              std::span<double>(values.data(), count));

        for (std::size_t k = 0; k < count; ++k) {
            const double f = values[k];
            if (!std::isfinite(f)) throw IntegrandError(std::span<const double>(points.data() + k * dims, dims), f);
            const double jf = jac[k] * f;
            out.cubes.accumulate(cube[k], jf);
            out.map.accumulate(std::span<const std::uint32_t>(idx.data() + k * dims, dims), jf);
        }
    }
}

FillBuffers fill_iteration(const FillInputs& in) {
    FillBuffers out(in.map.dims(), in.map.n_intervals(), in.plan.n_cubes());
    fill_runs(in, {0, in.plan.total_runs()}, out);
    return out;
}

}  // namespace vegasplus
