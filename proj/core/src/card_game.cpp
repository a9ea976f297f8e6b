#include "cis/card_game.hpp"

#include "cis/errors.hpp"
#include "cis/parallel.hpp"

namespace cis {

StrategyKind parse_strategy(const std::string& name) {
    if (name == "trivial") return StrategyKind::Trivial;
    if (name == "safe") return StrategyKind::Safe;
    if (name == "shifting") return StrategyKind::Shifting;
    throw InvalidArgument("unknown strategy '" + name + "' (expected trivial, safe or shifting)");
}

std::string strategy_name(StrategyKind s) {
    switch (s) {
        case StrategyKind::Trivial: return "trivial";
        case StrategyKind::Safe: return "safe";
        case StrategyKind::Shifting: return "shifting";
    }
    return "?";
}

namespace {

/// Guess state driven only by the correct/incorrect bit.
class Player {
public:
    Player(StrategyKind s, int m, int n) : strategy_(s), m_(m), n_(n) {}

    Letter guess() const { return current_; }

    void feedback(bool correct) {
        if (!correct || strategy_ == StrategyKind::Trivial) return;
        ++hits_;
        const int needed = strategy_ == StrategyKind::Safe ? m_ : 1;
        if (hits_ >= needed && current_ < n_) {
            ++current_;
            hits_ = 0;
        }
    }

private:
    StrategyKind strategy_;
    int m_;
    int n_;
    Letter current_ = 1;
    int hits_ = 0;
};

}  // namespace

GameTrace play(const Word& word, StrategyKind strategy) {
    GameTrace trace{word, {}, {}, 0};
    Player player(strategy, word.m(), word.n());
    trace.guesses.reserve(word.size());
    trace.feedback.reserve(word.size());
    for (Letter card : word.letters()) {
        const Letter g = player.guess();
        const bool hit = g == card;
        trace.guesses.push_back(g);
        trace.feedback.push_back(hit);
        trace.score += hit;
        player.feedback(hit);
    }
    return trace;
}

int play_score(std::span<const Letter> deck, int m, int n, StrategyKind strategy) {
    Player player(strategy, m, n);
    int score = 0;
    for (Letter card : deck) {
        const bool hit = player.guess() == card;
        score += hit;
        player.feedback(hit);
    }
    return score;
}

Estimate expected_score(int m, int n, StrategyKind strategy, std::uint64_t trials, std::uint64_t seed,
                        McOptions opt) {
    if (trials < 2) throw InvalidArgument("at least 2 trials are required");
    if (m < 1 || n < 1) throw InvalidArgument("m and n must be positive");
    using Buffer = std::vector<Letter>;
    auto v = run_trials<Buffer>(
        trials, seed, opt.threads, [] { return Buffer{}; },
        [=](std::uint64_t, RandomSource& rng, Buffer& buf) -> std::int64_t {
            sample_uniform_into(m, n, rng, buf);
            return play_score(buf, m, n, strategy);
        });
    return summarize(v, seed);
}

}  // namespace cis
