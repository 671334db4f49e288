#include "vegasplus/bench/configs.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "vegasplus/errors.hpp"

namespace vegasplus::bench {

NamedConfig parse_named_config(std::string_view name) {
    if (name == "def") return NamedConfig::def;
    if (name == "vf") return NamedConfig::vf;
    if (name == "tq") return NamedConfig::tq;
    throw InvalidConfig("unknown config '" + std::string(name) + "'; expected def, vf or tq");
}

std::string_view to_string(NamedConfig config) noexcept {
    switch (config) {
        case NamedConfig::def: return "def";
        case NamedConfig::vf: return "vf";
        case NamedConfig::tq: return "tq";
    }
    return "def";
}

std::size_t tq_intervals(std::uint64_t n_eval, std::size_t dims) {
    if (dims == 0) throw InvalidConfig("tq_intervals: dims must be >= 1");
    // The guard keeps exact powers (1e6 in 3D gives 100) from landing one below.
    const double root = std::pow(static_cast<double>(n_eval), 1.0 / (2.0 * static_cast<double>(dims)));
    const double raw = std::floor(root * 10.0 * (1.0 + 1e-12));
    return static_cast<std::size_t>(std::clamp(raw, 10.0, 1024.0));
}

IntegratorConfig make_config(NamedConfig config, std::uint64_t n_eval, std::size_t dims) {
    IntegratorConfig cfg;
    cfg.n_eval = n_eval;
    cfg.max_it = 20;
    cfg.skip = 0;
    cfg.batch_size = 1'048'576;
    cfg.alpha = 0.5;
    cfg.beta = 0.75;
    switch (config) {
        case NamedConfig::def:
            cfg.n_intervals = 1024;
            break;
        case NamedConfig::vf:
            cfg.n_intervals = 50;
            cfg.alpha = 1.5;
            break;
        case NamedConfig::tq:
            cfg.n_intervals = tq_intervals(n_eval, dims);
            break;
    }
    return cfg;
}

std::uint64_t parse_count(std::string_view text) {
    const auto bad = [&] { return InvalidConfig("expected a positive whole count, got '" + std::string(text) + "'"); };
    if (text.empty()) throw bad();

    std::uint64_t whole = 0;
    const auto* end = text.data() + text.size();
    if (auto [p, ec] = std::from_chars(text.data(), end, whole); ec == std::errc() && p == end) {
        if (whole == 0) throw bad();
        return whole;
    }

    double value = 0.0;
    auto [p, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || p != end || !(value >= 1.0) || value >= 0x1p63 || value != std::floor(value)) throw bad();
    return static_cast<std::uint64_t>(value);
}

std::vector<std::uint64_t> doubling_schedule(std::uint64_t from, std::uint64_t to) {
    if (from == 0) throw InvalidConfig("doubling schedule must start at a positive count");
    if (to < from) throw InvalidConfig("doubling schedule end is below its start");
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = from;; n *= 2) {
        out.push_back(n);
        if (n > to / 2) break;
    }
    return out;
}

}  // namespace vegasplus::bench
