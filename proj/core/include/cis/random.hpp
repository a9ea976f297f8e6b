#pragma once

#include <cstdint>
#include <random>

namespace cis {

/// Deterministic pseudo-random stream identified by (seed, stream index).
///
/// Two sources built from the same pair produce the same sequence. Distinct
/// stream indices give statistically independent streams, so parallel workers
/// can each own a stream without coordinating.
class RandomSource {
public:
    using result_type = std::mt19937_64::result_type;

    RandomSource(std::uint64_t seed, std::uint64_t stream_index);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_index() const { return stream_; }

    /// Uniform integer in [lo, hi].
    std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi);

    result_type operator()() { return engine_(); }
    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; used to derive engine seeds from (seed, stream).
std::uint64_t mix64(std::uint64_t x);

}  // namespace cis
