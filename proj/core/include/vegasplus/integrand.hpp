#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <span>
#include <type_traits>
#include <utility>

namespace vegasplus {

/// A real-valued function on R^d, either pointwise or batched.
///
/// The batched form receives `count` points stored row-major in `points`
/// (count * dims values) and writes `count` values. Batched callables that are
/// not marked concurrency-safe are serialized behind a mutex.
class Integrand {
public:
    using PointFn = std::function<double(std::span<const double>)>;
    using BatchFn = std::function<void(std::span<const double> points, std::size_t dims, std::span<double> values)>;

    Integrand() = default;

    template <typename F>
        requires std::is_invocable_r_v<double, F&, std::span<const double>>
    Integrand(F f)  // NOLINT(google-explicit-constructor)
        : point_(std::move(f)) {}

    static Integrand batched(BatchFn fn, bool concurrent_safe = false) {
        Integrand out;
        out.batch_ = std::move(fn);
        if (!concurrent_safe) out.lock_ = std::make_shared<std::mutex>();
        return out;
    }

    bool is_batched() const noexcept { return static_cast<bool>(batch_); }
    explicit operator bool() const noexcept { return point_ || batch_; }

    double operator()(std::span<const double> x) const {
        if (point_) return point_(x);
        double value = 0.0;
        evaluate(x, x.size(), std::span<double>(&value, 1));
        return value;
    }

    /// Evaluates values.size() points of dimension dims.
    void evaluate(std::span<const double> points, std::size_t dims, std::span<double> values) const {
        if (point_) {
            for (std::size_t i = 0; i < values.size(); ++i) values[i] = point_(points.subspan(i * dims, dims));
            return;
        }
        if (lock_) {
            std::scoped_lock guard(*lock_);
            batch_(points, dims, values);
        } else {
            batch_(points, dims, values);
        }
    }

private:
    PointFn point_;
    BatchFn batch_;
    std::shared_ptr<std::mutex> lock_;
};

}  // namespace vegasplus
