#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace vegasplus {

inline constexpr std::uint64_t kDefaultCubeCap = std::uint64_t{1} << 20;

/// Strata per axis: floor((n_eval/2)^(1/dims)), lowered until
/// n_strat^dims <= min(cube_cap, n_eval/2). Never below 1.
std::size_t compute_n_strat(std::uint64_t n_eval, std::size_t dims, std::uint64_t cube_cap = kDefaultCubeCap);

/// n_strat^dims, or 0 if that overflows 64 bits.
std::uint64_t checked_pow(std::uint64_t base, std::size_t exponent) noexcept;

/// Evaluations per hypercube from the per-cube spread statistic:
/// p_h = d_h^beta / sum(d^beta), n_h = max(2, ceil(n_eval * p_h)).
/// beta == 0 or an all-zero spread gives the uniform allocation.
std::vector<std::uint64_t> update_evals_per_cube(std::span<const double> spread, double beta, std::uint64_t n_eval);

/// As above, writing into `n_h` and using `scratch` for the weights; both are
/// resized as needed so their storage can be reused across iterations.
void update_evals_per_cube(std::span<const double> spread, double beta, std::uint64_t n_eval,
                           std::vector<std::uint64_t>& n_h, std::vector<double>& scratch);

/// Writes the y-space corner of cube h. Axis 0 is the least-significant digit.
void cube_origin(std::uint64_t h, std::size_t n_strat, std::span<double> origin);

/// Uniform partition of unit y-space into n_strat^dims hypercubes plus the
/// current per-cube evaluation plan.
class StratGrid {
public:
    StratGrid(std::size_t dims, std::size_t n_strat, std::uint64_t n_eval);

    std::size_t dims() const noexcept { return dims_; }
    std::size_t n_strat() const noexcept { return n_strat_; }
    std::uint64_t n_cubes() const noexcept { return n_cubes_; }
    double cube_volume() const noexcept { return cube_volume_; }
    std::uint64_t n_eval() const noexcept { return n_eval_; }

    std::span<const std::uint64_t> evals_per_cube() const noexcept { return evals_per_cube_; }
    std::span<const double> spread() const noexcept { return spread_; }

    /// Stores the latest spread statistic and reallocates evaluations.
    void reallocate(std::span<const double> spread, double beta);
    /// Same, taking ownership of `spread`; the previous spread is swapped back.
    void reallocate(std::vector<double>&& spread, double beta);

    void origin(std::uint64_t h, std::span<double> out) const { cube_origin(h, n_strat_, out); }

private:
    std::size_t dims_;
    std::size_t n_strat_;
    std::uint64_t n_cubes_;
    double cube_volume_;
    std::uint64_t n_eval_;
    std::vector<std::uint64_t> evals_per_cube_;
    std::vector<double> spread_;
    std::vector<double> weights_;
};

/// Exclusive prefix sum over evaluations per cube: run r belongs to cube h
/// iff offsets[h] <= r < offsets[h+1].
class RunPlan {
public:
    RunPlan() : offsets_{0} {}
    static RunPlan build(std::span<const std::uint64_t> evals_per_cube);
    /// Recomputes the offsets in place, reusing storage.
    void rebuild(std::span<const std::uint64_t> evals_per_cube);

    std::uint64_t total_runs() const noexcept { return offsets_.back(); }
    std::uint64_t n_cubes() const noexcept { return offsets_.size() - 1; }
    std::span<const std::uint64_t> offsets() const noexcept { return offsets_; }
    std::uint64_t begin(std::uint64_t h) const noexcept { return offsets_[h]; }
    std::uint64_t end(std::uint64_t h) const noexcept { return offsets_[h + 1]; }

    /// Binary search; throws ContractViolation if r >= total_runs().
    std::uint64_t run_to_cube(std::uint64_t r) const;

private:
    std::vector<std::uint64_t> offsets_;
};

/// Per-cube running sums of J*f: s1 = sum, s2 = sum of squares, count.
class CubeAccumulators {
public:
    CubeAccumulators() = default;
    explicit CubeAccumulators(std::uint64_t n_cubes) : s1_(n_cubes, 0.0), s2_(n_cubes, 0.0), count_(n_cubes, 0) {}

    std::uint64_t size() const noexcept { return s1_.size(); }

    void accumulate(std::uint64_t h, double jf) noexcept {
        s1_[h] += jf;
        s2_[h] += jf * jf;
        count_[h] += 1;
    }

    /// Elementwise sum; throws InternalError on shape mismatch.
    void add(const CubeAccumulators& other);
    void reset() noexcept;

    std::span<const double> s1() const noexcept { return s1_; }
    std::span<const double> s2() const noexcept { return s2_; }
    std::span<const std::uint64_t> count() const noexcept { return count_; }

    friend bool operator==(const CubeAccumulators&, const CubeAccumulators&) = default;

private:
    std::vector<double> s1_;
    std::vector<double> s2_;
    std::vector<std::uint64_t> count_;
};

struct IterationEstimate {
    double integral = 0.0;
    double variance = 0.0;
    /// sigma_h(Jf) * V_h per cube, the input to update_evals_per_cube.
    std::vector<double> spread;
};

/// Sums per-cube contributions: I = sum V_h mean_h, var = sum V_h^2 rawvar_h / n_h
/// with the population variance rawvar_h. Throws InternalError if a cube has
/// fewer than two samples.
IterationEstimate compute_results(const CubeAccumulators& acc, double cube_volume);
/// In-place form; reuses the storage of out.spread.
void compute_results(const CubeAccumulators& acc, double cube_volume, IterationEstimate& out);

}  // namespace vegasplus
