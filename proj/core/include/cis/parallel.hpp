#pragma once

#include "cis/random.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace cis {

/// Worker count from the CIS_THREADS environment variable, or the hardware
/// concurrency when unset/invalid. Never less than 1.
unsigned default_threads();

/// Runs `trial(i, rng)` for i in [0, trials) where rng = RandomSource(seed,
/// stream_offset + i), on up to `threads` workers (0 = default_threads()).
/// Results land at index i, so the output does not depend on scheduling.
/// `trial` must be safe to call concurrently; `make_state` builds one scratch
/// object per worker.
template <class State>
std::vector<std::int64_t> run_trials(
    std::uint64_t trials, std::uint64_t seed, unsigned threads,
    const std::function<State()>& make_state,
    const std::function<std::int64_t(std::uint64_t, RandomSource&, State&)>& trial,
    std::uint64_t stream_offset = 0);

namespace detail {
void parallel_blocks(std::uint64_t count, unsigned threads,
                     const std::function<void(unsigned worker, std::uint64_t begin, std::uint64_t end)>& body);
}

template <class State>
std::vector<std::int64_t> run_trials(
    std::uint64_t trials, std::uint64_t seed, unsigned threads,
    const std::function<State()>& make_state,
    const std::function<std::int64_t(std::uint64_t, RandomSource&, State&)>& trial,
    std::uint64_t stream_offset) {
    std::vector<std::int64_t> out(trials);
    if (threads == 0) threads = default_threads();
    std::vector<State> states;
    states.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) states.push_back(make_state());
    detail::parallel_blocks(trials, threads, [&](unsigned worker, std::uint64_t begin, std::uint64_t end) {
        State& st = states[worker];
        for (std::uint64_t i = begin; i < end; ++i) {
            RandomSource rng(seed, stream_offset + i);
            out[i] = trial(i, rng, st);
        }
    });
    return out;
}

}  // namespace cis
