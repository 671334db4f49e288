#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace vegasplus {

/// Closed interval [lo, hi] of one integration axis.
struct Bounds {
    double lo = 0.0;
    double hi = 1.0;

    double width() const noexcept { return hi - lo; }
    friend bool operator==(const Bounds&, const Bounds&) = default;
};

/// Row-major (dims x n) table, one row per axis.
template <typename T>
class PerAxis {
public:
    PerAxis() = default;
    PerAxis(std::size_t dims, std::size_t n, T value = T{}) : dims_(dims), n_(n), data_(dims * n, value) {}

    std::size_t dims() const noexcept { return dims_; }
    std::size_t size_per_axis() const noexcept { return n_; }

    std::span<T> row(std::size_t dim) noexcept { return {data_.data() + dim * n_, n_}; }
    std::span<const T> row(std::size_t dim) const noexcept { return {data_.data() + dim * n_, n_}; }

    T& at(std::size_t dim, std::size_t i) noexcept { return data_[dim * n_ + i]; }
    const T& at(std::size_t dim, std::size_t i) const noexcept { return data_[dim * n_ + i]; }

    std::span<T> flat() noexcept { return data_; }
    std::span<const T> flat() const noexcept { return data_; }

    friend bool operator==(const PerAxis&, const PerAxis&) = default;

private:
    std::size_t dims_ = 0;
    std::size_t n_ = 0;
    std::vector<T> data_;
};

/// Per-axis piecewise-linear map from unit y-space onto the integration box.
///
/// Each axis is split into n_intervals pieces; uniform slices of width
/// 1/n_intervals in y land on intervals of width dx_i in x, so the Jacobian
/// of one axis is n_intervals * dx_i. Edges are stored (not widths), which
/// keeps the endpoints exact across refinements.
class VegasMap {
public:
    /// Uniformly spaced map. Throws InvalidDomain on non-finite or inverted bounds.
    static VegasMap uniform(std::size_t dims, std::size_t n_intervals, std::span<const Bounds> bounds);

    std::size_t dims() const noexcept { return edges_.dims(); }
    std::size_t n_intervals() const noexcept { return edges_.size_per_axis() - 1; }

    std::span<const double> edges(std::size_t dim) const noexcept { return edges_.row(dim); }
    Bounds bounds(std::size_t dim) const noexcept;

    /// Maps y in [0,1)^d to x, writing per-axis interval indices; returns the Jacobian.
    /// Throws ContractViolation when some y_j lies outside [0,1).
    double transform(std::span<const double> y, std::span<double> x, std::span<std::uint32_t> idx) const;

    /// Same as transform() without the range check; callers guarantee y in [0,1).
    double transform_unchecked(std::span<const double> y, std::span<double> x,
                               std::span<std::uint32_t> idx) const noexcept;

    /// Inverse of one axis of the map, x in [lo, hi] -> y in [0, 1].
    double inverse(std::size_t dim, double x) const;

    /// Replaces the edges of one axis. Throws InternalError unless endpoints
    /// are kept and the edges are strictly increasing.
    void set_edges(std::size_t dim, std::span<const double> edges);

    friend bool operator==(const VegasMap&, const VegasMap&) = default;

private:
    explicit VegasMap(PerAxis<double> edges) : edges_(std::move(edges)) {}

    PerAxis<double> edges_;
};

/// Per-interval accumulators used to refine the map: sum of (J f)^2 and sample counts.
class MapWeights {
public:
    MapWeights() = default;
    MapWeights(std::size_t dims, std::size_t n_intervals) : sums_(dims, n_intervals), counts_(dims, n_intervals) {}

    std::size_t dims() const noexcept { return sums_.dims(); }
    std::size_t n_intervals() const noexcept { return sums_.size_per_axis(); }

    void accumulate(std::span<const std::uint32_t> idx, double jf) noexcept {
        const double w = jf * jf;
        for (std::size_t d = 0; d < idx.size(); ++d) {
            sums_.at(d, idx[d]) += w;
            counts_.at(d, idx[d]) += 1;
        }
    }

    /// Elementwise sum; throws InternalError on shape mismatch.
    void add(const MapWeights& other);
    void reset() noexcept;

    std::span<const double> sums(std::size_t dim) const noexcept { return sums_.row(dim); }
    std::span<const std::uint64_t> counts(std::size_t dim) const noexcept { return counts_.row(dim); }
    const PerAxis<double>& sum_table() const noexcept { return sums_; }
    const PerAxis<std::uint64_t>& count_table() const noexcept { return counts_; }

    friend bool operator==(const MapWeights&, const MapWeights&) = default;

private:
    PerAxis<double> sums_;
    PerAxis<std::uint64_t> counts_;
};

/// Count-average, smooth with a (1,6,1)/8 kernel ((7,1)/8 at the ends),
/// normalize to unit sum and damp with ((d-1)/ln d)^alpha for one axis.
/// An all-zero axis yields all zeros.
std::vector<double> smooth_and_damp(std::span<const double> sums, std::span<const std::uint64_t> counts, double alpha);

/// smooth_and_damp applied to every axis of the accumulated weights.
PerAxis<double> smooth_and_damp(const MapWeights& weights, double alpha);

/// New edges for one axis such that every new interval holds an equal share
/// of the damped weight (weight is spread uniformly within old intervals).
/// All-zero or all-equal weights return the old edges unchanged.
std::vector<double> refine_edges(std::span<const double> edges, std::span<const double> damped);

/// refine_edges applied to every axis of the map.
VegasMap update_grid(const VegasMap& map, const PerAxis<double>& damped);

}  // namespace vegasplus
