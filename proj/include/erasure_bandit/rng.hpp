#pragma once

#include <cstdint>
#include <limits>

namespace erasure_bandit {

/// Consumers of randomness, one substream each.
enum class Purpose : std::uint64_t {
    Rewards = 1,
    Erasures = 2,
    Shuffle = 3,
    Instance = 4,
    Policy = 5,
    Fallback = 6,
};

/// Counter-based SplitMix64 stream. The n-th output is a pure function of
/// (seed, n), and substreams are derived by hashing a key into the seed, so
/// any stream can be recreated from its root seed and the chain of keys.
///
/// Satisfies UniformRandomBitGenerator.
class RngStream {
public:
    using result_type = std::uint64_t;

    explicit RngStream(std::uint64_t seed) noexcept : seed_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept { return mix(seed_ + (++counter_) * kGamma); }

    /// Uniform on [0, 1) with 53 bits of precision.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform on {0, ..., n-1}. n must be positive.
    std::uint64_t uniform_index(std::uint64_t n) noexcept;

    /// Standard normal via Box-Muller; consumes exactly two outputs.
    double standard_normal() noexcept;

    /// Independent child stream; does not advance this stream.
    [[nodiscard]] RngStream substream(std::uint64_t key) const noexcept
    {
        return RngStream(mix(seed_ ^ mix(key * kGamma + kKeySalt)));
    }

    [[nodiscard]] RngStream substream(Purpose purpose) const noexcept
    {
        return substream(static_cast<std::uint64_t>(purpose));
    }

    /// Child stream keyed by a pair, e.g. (round, arm).
    [[nodiscard]] RngStream substream(std::uint64_t key1, std::uint64_t key2) const noexcept
    {
        return substream(key1).substream(key2);
    }

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t draws() const noexcept { return counter_; }

    static constexpr std::uint64_t mix(std::uint64_t z) noexcept
    {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
    static constexpr std::uint64_t kKeySalt = 0x632be59bd9b4e019ULL;

    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

} // namespace erasure_bandit
