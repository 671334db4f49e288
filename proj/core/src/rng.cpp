#include "vegasplus/rng.hpp"

namespace vegasplus {

namespace {

constexpr std::uint64_t kPhiloxMultiplier = 0xD2B74407B1CE6E93ULL;
constexpr std::uint64_t kPhiloxWeyl = 0x9E3779B97F4A7C15ULL;
constexpr int kPhiloxRounds = 10;

__extension__ using uint128 = unsigned __int128;

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

std::array<std::uint64_t, 2> philox2x64(std::array<std::uint64_t, 2> counter, std::uint64_t key) noexcept {
    for (int round = 0; round < kPhiloxRounds; ++round) {
        const uint128 product = static_cast<uint128>(kPhiloxMultiplier) * counter[0];
        const auto hi = static_cast<std::uint64_t>(product >> 64);
        const auto lo = static_cast<std::uint64_t>(product);
        counter = {hi ^ key ^ counter[1], lo};
        key += kPhiloxWeyl;
    }
    return counter;
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t position) noexcept
    : seed_(seed), key_(splitmix64(seed)), stream_id_(stream_id), position_(position) {}

std::uint64_t RngStream::next_u64() noexcept {
    const std::uint64_t block = position_ >> 1;
    if (block != cached_block_) {
        cache_ = philox2x64({block, stream_id_}, key_);
        cached_block_ = block;
    }
    return cache_[position_++ & 1];
}

double RngStream::next_uniform() noexcept { return to_unit_double(next_u64()); }

}  // namespace vegasplus
