#include "vegasplus/importance_map.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "vegasplus/errors.hpp"

namespace vegasplus {

VegasMap VegasMap::uniform(std::size_t dims, std::size_t n_intervals, std::span<const Bounds> bounds) {
    if (dims == 0) throw InvalidDomain("map needs at least one dimension");
    if (n_intervals < 2) throw InvalidDomain("map needs at least two intervals per axis");
    if (bounds.size() != dims) {
        throw InvalidDomain("expected " + std::to_string(dims) + " bounds, got " + std::to_string(bounds.size()));
    }
    PerAxis<double> edges(dims, n_intervals + 1);
    for (std::size_t d = 0; d < dims; ++d) {
        const auto [lo, hi] = bounds[d];
        if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
            throw InvalidDomain("axis " + std::to_string(d) + ": bounds must be finite with lo < hi");
        }
        auto row = edges.row(d);
        const double width = hi - lo;
        for (std::size_t i = 0; i <= n_intervals; ++i) {
            row[i] = lo + width * (static_cast<double>(i) / static_cast<double>(n_intervals));
        }
        row[n_intervals] = hi;
    }
    return VegasMap(std::move(edges));
}

Bounds VegasMap::bounds(std::size_t dim) const noexcept {
    const auto e = edges(dim);
    return {e.front(), e.back()};
}

double VegasMap::transform(std::span<const double> y, std::span<double> x, std::span<std::uint32_t> idx) const {
    if (y.size() != dims() || x.size() != dims() || idx.size() != dims()) {
        throw ContractViolation("transform: span sizes must equal the map dimension");
    }
    for (std::size_t d = 0; d < y.size(); ++d) {
        if (!(y[d] >= 0.0 && y[d] < 1.0)) {
            throw ContractViolation("transform: y[" + std::to_string(d) + "] = " + std::to_string(y[d]) +
                                    " is outside [0,1)");
        }
    }
    return transform_unchecked(y, x, idx);
}

double VegasMap::transform_unchecked(std::span<const double> y, std::span<double> x,
                                     std::span<std::uint32_t> idx) const noexcept {
    const std::size_t n = n_intervals();
    const double scale = static_cast<double>(n);
    double jac = 1.0;
    for (std::size_t d = 0; d < y.size(); ++d) {
        const double pos = y[d] * scale;
        std::size_t i = static_cast<std::size_t>(pos);
        if (i >= n) i = n - 1;
        const double frac = pos - static_cast<double>(i);
        const double* e = edges_.row(d).data();
        const double width = e[i + 1] - e[i];
        x[d] = e[i] + frac * width;
        idx[d] = static_cast<std::uint32_t>(i);
        jac *= scale * width;
    }
    return jac;
}

double VegasMap::inverse(std::size_t dim, double x) const {
    const auto e = edges(dim);
    if (!(x >= e.front() && x <= e.back())) throw ContractViolation("inverse: x outside the axis bounds");
    const std::size_t n = n_intervals();
    auto it = std::upper_bound(e.begin(), e.end(), x);
    std::size_t i = it == e.begin() ? 0 : static_cast<std::size_t>(it - e.begin()) - 1;
    if (i >= n) i = n - 1;
    const double frac = (x - e[i]) / (e[i + 1] - e[i]);
    return (static_cast<double>(i) + frac) / static_cast<double>(n);
}

void VegasMap::set_edges(std::size_t dim, std::span<const double> edges) {
    auto row = edges_.row(dim);
    if (edges.size() != row.size()) throw InternalError("set_edges: wrong number of edges");
    if (edges.front() != row.front() || edges.back() != row.back()) {
        throw InternalError("set_edges: axis endpoints moved");
    }
    for (std::size_t i = 1; i < edges.size(); ++i) {
        if (!(edges[i] > edges[i - 1])) throw InternalError("set_edges: edges not strictly increasing");
    }
    std::copy(edges.begin(), edges.end(), row.begin());
}

void MapWeights::add(const MapWeights& other) {
    if (other.dims() != dims() || other.n_intervals() != n_intervals()) {
        throw InternalError("MapWeights::add: shape mismatch");
    }
    auto s = sums_.flat();
    auto os = other.sums_.flat();
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += os[i];
    auto c = counts_.flat();
    auto oc = other.counts_.flat();
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += oc[i];
}

void MapWeights::reset() noexcept {
    std::ranges::fill(sums_.flat(), 0.0);
    std::ranges::fill(counts_.flat(), std::uint64_t{0});
}

namespace {

// ((d-1)/ln d)^alpha with its continuous limits at 0 and 1.
double damp(double d, double alpha) {
    if (d < 1e-30) return 0.0;
    if (d == 1.0) return 1.0;
    const double ratio = (d - 1.0) / std::log1p(d - 1.0);
    return std::pow(ratio, alpha);
}

}  // namespace

std::vector<double> smooth_and_damp(std::span<const double> sums, std::span<const std::uint64_t> counts,
                                    double alpha) {
    const std::size_t n = sums.size();
    if (counts.size() != n) throw ContractViolation("smooth_and_damp: sums and counts differ in length");
    if (!(alpha >= 0.0)) throw ContractViolation("smooth_and_damp: alpha must be >= 0");

    std::vector<double> avg(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (counts[i] > 0) avg[i] = sums[i] / static_cast<double>(counts[i]);
    }
    if (std::ranges::all_of(avg, [](double v) { return v == 0.0; })) return avg;

    std::vector<double> smooth(n);
    if (n == 1) {
        smooth[0] = avg[0];
    } else {
        smooth[0] = (7.0 * avg[0] + avg[1]) / 8.0;
        for (std::size_t i = 1; i + 1 < n; ++i) smooth[i] = (avg[i - 1] + 6.0 * avg[i] + avg[i + 1]) / 8.0;
        smooth[n - 1] = (avg[n - 2] + 7.0 * avg[n - 1]) / 8.0;
    }

    const double total = std::accumulate(smooth.begin(), smooth.end(), 0.0);
    for (auto& v : smooth) v = damp(v / total, alpha);
    return smooth;
}

PerAxis<double> smooth_and_damp(const MapWeights& weights, double alpha) {
    PerAxis<double> out(weights.dims(), weights.n_intervals());
    for (std::size_t d = 0; d < weights.dims(); ++d) {
        const auto row = smooth_and_damp(weights.sums(d), weights.counts(d), alpha);
        std::ranges::copy(row, out.row(d).begin());
    }
    return out;
}

std::vector<double> refine_edges(std::span<const double> edges, std::span<const double> damped) {
    const std::size_t n = damped.size();
    if (edges.size() != n + 1) throw ContractViolation("refine_edges: need one more edge than weights");
    std::vector<double> out(edges.begin(), edges.end());

    const double total = std::accumulate(damped.begin(), damped.end(), 0.0);
    if (!(total > 0.0) || !std::isfinite(total)) return out;
    if (std::ranges::all_of(damped, [&](double v) { return v == damped[0]; })) return out;

    const double share = total / static_cast<double>(n);
    std::size_t i = 0;      // old interval being consumed
    double consumed = 0.0;  // cumulative weight before old interval i
    for (std::size_t k = 1; k < n; ++k) {
        const double target = share * static_cast<double>(k);
        while (i + 1 < n && consumed + damped[i] < target) {
            consumed += damped[i];
            ++i;
        }
        double frac = damped[i] > 0.0 ? (target - consumed) / damped[i] : 1.0;
        frac = std::clamp(frac, 0.0, 1.0);
        out[k] = edges[i] + frac * (edges[i + 1] - edges[i]);
    }

    // Collapsed intervals can only come from rounding in heavily peaked weights.
    for (std::size_t k = 1; k < n; ++k) {
        if (!(out[k] > out[k - 1])) out[k] = std::nextafter(out[k - 1], out[n]);
    }
    for (std::size_t k = n - 1; k >= 1 && !(out[k] < out[k + 1]); --k) {
        out[k] = std::nextafter(out[k + 1], out[0]);
    }
    return out;
}

VegasMap update_grid(const VegasMap& map, const PerAxis<double>& damped) {
    if (damped.dims() != map.dims() || damped.size_per_axis() != map.n_intervals()) {
        throw ContractViolation("update_grid: weight table shape does not match the map");
    }
    VegasMap out = map;
    for (std::size_t d = 0; d < map.dims(); ++d) {
        const auto edges = refine_edges(map.edges(d), damped.row(d));
        out.set_edges(d, edges);
    }
    return out;
}

}  // namespace vegasplus
