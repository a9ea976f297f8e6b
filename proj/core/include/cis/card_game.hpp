#pragma once

#include "cis/monte_carlo.hpp"
#include "cis/words.hpp"

#include <string>
#include <vector>

namespace cis {

/// Guessing strategies for the partial feedback model: after each guess the
/// player only learns whether it was right.
enum class StrategyKind {
    /// Always guess 1.
    Trivial,
    /// Guess v until all m copies of v have been guessed correctly, then v+1.
    Safe,
    /// Guess v until one correct guess, then v+1.
    Shifting,
};

StrategyKind parse_strategy(const std::string& name);
std::string strategy_name(StrategyKind s);

struct GameTrace {
    Word word;
    std::vector<Letter> guesses;
    std::vector<bool> feedback;
    int score = 0;
};

/// Plays one deck. Once a strategy has moved past n it keeps guessing n.
GameTrace play(const Word& word, StrategyKind strategy);

/// Score only, without recording the trace.
int play_score(std::span<const Letter> deck, int m, int n, StrategyKind strategy);

Estimate expected_score(int m, int n, StrategyKind strategy, std::uint64_t trials, std::uint64_t seed,
                        McOptions opt = {});

}  // namespace cis
