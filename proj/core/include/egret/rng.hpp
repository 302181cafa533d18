#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "egret/errors.hpp"

namespace egret {

// splitmix64 finalizer; used to decorrelate stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Independent engine per (seed, stream). Adding streams never reshuffles the
// draws of existing ones, so results are stable under thread-count changes.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
    return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(~stream)));
}

// Uniform in [0, 1) with a pinned bit recipe. std::uniform_real_distribution
// is not specified bit-exactly by the standard, which would break the
// reproducibility contract across toolchains.
inline double uniform_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_range(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform_unit(rng);
}

// Unbiased draw from [0, n) by rejection.
inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
    if (n == 0) throw DomainError("uniform_index: empty range");
    const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % n;
    std::uint64_t x = rng();
    while (x >= limit) x = rng();
    return x % n;
}

// Inverse-CDF draw over non-negative weights; u is a uniform unit sample.
// The last positive weight absorbs rounding slack.
inline std::size_t sample_weighted(std::span<const double> weights, double u) {
    double total = 0.0;
    std::size_t last_positive = weights.size();
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] < 0.0) throw DomainError("sample_weighted: negative weight");
        total += weights[i];
        if (weights[i] > 0.0) last_positive = i;
    }
    if (total <= 0.0 || last_positive == weights.size())
        throw DegenerateDistributionError("sample_weighted: no mass");
    double acc = 0.0;
    const double cut = u * total;
    for (std::size_t i = 0; i <= last_positive; ++i) {
        acc += weights[i];
        if (cut < acc && weights[i] > 0.0) return i;
    }
    return last_positive;
}

}  // namespace egret
