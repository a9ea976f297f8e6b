#include "cis/random.hpp"

namespace cis {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream_index)
    : seed_(seed), stream_(stream_index), engine_(mix64(mix64(seed) ^ mix64(~stream_index))) {}

std::uint64_t RandomSource::uniform(std::uint64_t lo, std::uint64_t hi) {
    std::uniform_int_distribution<std::uint64_t> dist(lo, hi);
    return dist(engine_);
}

}  // namespace cis
