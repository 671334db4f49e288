#pragma once

#include <array>
#include <cstdint>

namespace vegasplus {

/// Philox2x64-10 block function: a keyed bijection of a 128-bit counter.
std::array<std::uint64_t, 2> philox2x64(std::array<std::uint64_t, 2> counter, std::uint64_t key) noexcept;

/// Counter-based uniform stream.
///
/// The k-th output of a stream is a pure function of (seed, stream_id, k), so
/// a stream can be positioned anywhere in O(1) and two workers never need to
/// share generator state.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t position = 0) noexcept;

    /// Uniform double in [0, 1) with 53 random mantissa bits.
    double next_uniform() noexcept;

    /// Raw 64-bit output; advances the position by one.
    std::uint64_t next_u64() noexcept;

    /// Switches to another stream of the same seed at an absolute position.
    void reposition(std::uint64_t stream_id, std::uint64_t position) noexcept {
        stream_id_ = stream_id;
        position_ = position;
        cached_block_ = ~std::uint64_t{0};
    }

    /// Jump-ahead to an absolute position.
    void skip_to(std::uint64_t position) noexcept { position_ = position; }

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }
    std::uint64_t position() const noexcept { return position_; }

private:
    std::uint64_t seed_;
    std::uint64_t key_;
    std::uint64_t stream_id_;
    std::uint64_t position_;
    std::uint64_t cached_block_ = ~std::uint64_t{0};
    std::array<std::uint64_t, 2> cache_{};
};

inline RngStream make_stream(std::uint64_t seed, std::uint64_t stream_id) noexcept {
    return RngStream(seed, stream_id);
}

/// Maps 64 random bits to [0, 1); never returns 1.0.
constexpr double to_unit_double(std::uint64_t bits) noexcept {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace vegasplus
