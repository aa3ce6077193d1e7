#pragma once

// Deterministic random streams.
//
// xoshiro256** (Blackman & Vigna) seeded through splitmix64. Every consumer
// gets its own substream derived from the scenario seed and a purpose tag,
// so adding draws for one purpose never shifts another.

#include <array>
#include <cstdint>
#include <limits>
#include <span>

#include "minds/errors.hpp"

namespace minds {

class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

    constexpr std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

class Xoshiro256StarStar {
public:
    using result_type = std::uint64_t;

    explicit constexpr Xoshiro256StarStar(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& word : s_) word = sm.next();
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on [0, 1) with 53 bits of resolution.
    constexpr double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw ContractError("below(0)");
        const auto v = static_cast<std::uint64_t>(uniform01() * static_cast<double>(n));
        return v < n ? v : n - 1;
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::array<std::uint64_t, 4> s_{};
};

enum class StreamTag : std::uint64_t {
    Corpus = 1,
    Workload = 2,
};

// Seed for the substream `tag` of `seed`, optionally split further by `index`.
constexpr std::uint64_t derive_seed(std::uint64_t seed, StreamTag tag, std::uint64_t index = 0) {
    SplitMix64 sm(seed ^ (static_cast<std::uint64_t>(tag) * 0xD1B54A32D192ED03ULL));
    std::uint64_t s = sm.next();
    SplitMix64 split(s + index * 0x9E3779B97F4A7C15ULL);
    return split.next();
}

// Index drawn with probability proportional to its weight. Needs at least one
// positive weight; zero-weight entries are never chosen.
template <class Rng>
std::size_t draw_categorical(Rng& rng, std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    if (!(total > 0.0)) throw ContractError("categorical draw with no positive weight");
    const double target = rng.uniform01() * total;
    double acc = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] <= 0.0) continue;
        acc += weights[i];
        last_positive = i;
        if (target < acc) return i;
    }
    return last_positive;
}

} // namespace minds
