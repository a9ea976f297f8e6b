#include "cis/monte_carlo.hpp"

#include "cis/errors.hpp"
#include "cis/exact.hpp"
#include "cis/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace cis {

bool Estimate::within(double target, double sigmas, double slack) const {
    return std::abs(mean - target) <= sigmas * std_error + slack;
}

Estimate summarize(std::span<const std::int64_t> values, std::uint64_t seed) {
    Estimate e;
    e.trials = values.size();
    e.seed = seed;
    if (values.empty()) return e;
    // Welford, in index order.
    long double mean = 0, m2 = 0;
    std::uint64_t count = 0;
    for (std::int64_t v : values) {
        ++count;
        const long double delta = v - mean;
        mean += delta / count;
        m2 += delta * (v - mean);
    }
    e.mean = static_cast<double>(mean);
    const double var = count > 1 ? static_cast<double>(m2 / (count - 1)) : 0.0;
    e.std_error = std::sqrt(var / static_cast<double>(count));
    e.ci95_lo = e.mean - 1.96 * e.std_error;
    e.ci95_hi = e.mean + 1.96 * e.std_error;
    return e;
}

namespace {

void check_trials(std::uint64_t trials) {
    if (trials < 2) throw InvalidArgument("at least 2 trials are required");
}

using Buffer = std::vector<Letter>;

std::vector<std::int64_t> word_statistic(int m, int n, std::uint64_t trials, std::uint64_t seed,
                                         McOptions opt, int (*stat)(const Buffer&, int),
                                         std::uint64_t stream_offset = 0) {
    check_trials(trials);
    if (m < 1 || n < 1) throw InvalidArgument("m and n must be positive");
    return run_trials<Buffer>(
        trials, seed, opt.threads, [] { return Buffer{}; },
        [=](std::uint64_t, RandomSource& rng, Buffer& buf) -> std::int64_t {
            sample_uniform_into(m, n, rng, buf);
            return stat(buf, n);
        },
        stream_offset);
}

int stat_l1(const Buffer& b, int) { return l1(b); }
int stat_lmax(const Buffer& b, int n) { return l_max(b, n); }
int stat_lis(const Buffer& b, int) { return longest_increasing(b); }

}  // namespace

Estimate estimate_l1(int m, int n, std::uint64_t trials, std::uint64_t seed, McOptions opt) {
    auto v = word_statistic(m, n, trials, seed, opt, stat_l1);
    return summarize(v, seed);
}

Estimate estimate_lmax(int m, int n, std::uint64_t trials, std::uint64_t seed, McOptions opt) {
    auto v = word_statistic(m, n, trials, seed, opt, stat_lmax);
    return summarize(v, seed);
}

Estimate estimate_lis(int m, int n, std::uint64_t trials, std::uint64_t seed, McOptions opt) {
    auto v = word_statistic(m, n, trials, seed, opt, stat_lis);
    return summarize(v, seed);
}

double central_moment_coefficient(int r) {
    if (r < 1) throw InvalidArgument("moment order must be positive");
    if (r == 1) return 0.0;
    if (r % 2 == 0)
        return std::tgamma(r + 1.0) / (std::pow(2.0, r / 2) * std::tgamma(r / 2 + 1.0));
    return std::tgamma(r + 1.0) / (3.0 * std::pow(2.0, (r - 1) / 2) * std::tgamma((r - 3) / 2 + 1.0));
}

double raw_moment_target(int m, int r) {
    const double md = m;
    return std::pow(md, r) + r * (r + 1) / 2.0 * std::pow(md, r - 1);
}

MomentReport moments(int m, int n, int r_max, std::uint64_t trials, std::uint64_t seed, McOptions opt) {
    if (r_max < 2 || r_max > kMaxMomentOrder)
        throw InvalidArgument("r_max must be in [2, " + std::to_string(kMaxMomentOrder) + "]");
    auto v = word_statistic(m, n, trials, seed, opt, stat_l1);
    const Estimate mean_est = summarize(v, seed);

    MomentReport rep;
    rep.m = m;
    rep.n = n;
    rep.trials = trials;
    rep.seed = seed;
    rep.mu = mean_est.mean;
    rep.mu_std_error = mean_est.std_error;
    rep.caveat = "central moments use the in-sample mean; O(1/trials) bias";

    const auto T = static_cast<long double>(trials);
    long double mu = 0;
    for (auto x : v) mu += x;
    mu /= T;

    auto moment_row = [&](int r, bool central) {
        long double s = 0, s2 = 0;
        for (auto x : v) {
            const long double base = central ? x - mu : static_cast<long double>(x);
            long double p = 1;
            for (int i = 0; i < r; ++i) p *= base;
            s += p;
            s2 += p * p;
        }
        const long double mean = s / T;
        const long double var = std::max<long double>(0, (s2 / T - mean * mean) * T / (T - 1));
        MomentRow row;
        row.r = r;
        row.value = static_cast<double>(mean);
        row.std_error = static_cast<double>(std::sqrt(var / T));
        row.target = central ? central_moment_coefficient(r) * std::pow(static_cast<double>(m), r / 2)
                             : raw_moment_target(m, r);
        return row;
    };
    for (int r = 2; r <= r_max; ++r) rep.central.push_back(moment_row(r, true));
    for (int r = 1; r <= r_max; ++r) rep.raw.push_back(moment_row(r, false));
    return rep;
}

double FrequencyComparison::pooled_se() const { return std::sqrt(se_a * se_a + se_b * se_b); }

double FrequencyComparison::z() const {
    const double se = pooled_se();
    if (se == 0.0) return freq_a == freq_b ? 0.0 : INFINITY;
    return (freq_a - freq_b) / se;
}

namespace {

FrequencyComparison compare(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b,
                            std::uint64_t seed) {
    const Estimate ea = summarize(a, seed);
    const Estimate eb = summarize(b, seed);
    FrequencyComparison c;
    c.freq_a = ea.mean;
    c.freq_b = eb.mean;
    c.se_a = ea.std_error;
    c.se_b = eb.std_error;
    c.trials = a.size();
    c.seed = seed;
    return c;
}

// Streams for the second sample of a two-sample check.
constexpr std::uint64_t kSecondSample = 1ULL << 62;

}  // namespace

Observation1Report check_observation1(int m, int n, int k, std::uint64_t trials, std::uint64_t seed,
                                      McOptions opt) {
    check_trials(trials);
    if (m < 1 || k < 1 || k > n) throw InvalidArgument("check_observation1 needs 1 <= k <= n");
    auto a = run_trials<Buffer>(
        trials, seed, opt.threads, [] { return Buffer{}; },
        [=](std::uint64_t, RandomSource& rng, Buffer& buf) -> std::int64_t {
            sample_uniform_into(m, n, rng, buf);
            return l1(buf) >= k;
        });
    auto b = run_trials<Buffer>(
        trials, seed, opt.threads, [] { return Buffer{}; },
        [=](std::uint64_t, RandomSource& rng, Buffer& buf) -> std::int64_t {
            sample_uniform_into(m, k, rng, buf);
            return l1(buf) == k;
        },
        kSecondSample);
    Observation1Report rep;
    rep.m = m;
    rep.n = n;
    rep.k = k;
    rep.cmp = compare(a, b, seed);
    rep.exact = complete_prob(m, k, CompletionEngine::GeneratingFunction);
    return rep;
}

bool labeled_contains_type(std::span<const std::uint32_t> positions, int m, std::span<const Letter> pattern) {
    std::int64_t prev = -1;
    for (Letter v : pattern) {
        std::int64_t best = -1;
        const std::size_t base = static_cast<std::size_t>(v - 1) * static_cast<std::size_t>(m);
        for (int h = 0; h < m; ++h) {
            const std::int64_t p = positions[base + static_cast<std::size_t>(h)];
            if (p > prev && (best < 0 || p < best)) best = p;
        }
        if (best < 0) return false;
        prev = best;
    }
    return true;
}

Observation2Report check_observation2(int m, int n, std::span<const Letter> pattern, std::uint64_t trials,
                                      std::uint64_t seed, McOptions opt) {
    check_trials(trials);
    if (m < 1 || n < 1) throw InvalidArgument("m and n must be positive");
    if (pattern.empty()) throw InvalidArgument("pattern must be non-empty");
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    for (Letter v : pattern) {
        if (v < 1 || v > n) throw InvalidArgument("pattern letter outside [n]");
        if (seen[v]) throw InvalidArgument("pattern letters must be distinct");
        seen[v] = true;
    }
    std::vector<Letter> w(pattern.begin(), pattern.end());

    auto a = run_trials<Buffer>(
        trials, seed, opt.threads, [] { return Buffer{}; },
        [&](std::uint64_t, RandomSource& rng, Buffer& buf) -> std::int64_t {
            sample_uniform_into(m, n, rng, buf);
            return contains_subsequence(buf, w);
        });

    struct Labeled {
        std::vector<std::uint32_t> deck;
        std::vector<std::uint32_t> positions;
    };
    const std::size_t len = static_cast<std::size_t>(m) * static_cast<std::size_t>(n);
    auto b = run_trials<Labeled>(
        trials, seed, opt.threads, [] { return Labeled{}; },
        [&](std::uint64_t, RandomSource& rng, Labeled& s) -> std::int64_t {
            s.deck.resize(len);
            s.positions.resize(len);
            for (std::size_t i = 0; i < len; ++i) s.deck[i] = static_cast<std::uint32_t>(i);
            for (std::size_t i = len; i > 1; --i)
                std::swap(s.deck[i - 1], s.deck[static_cast<std::size_t>(rng.uniform(0, i - 1))]);
            for (std::size_t i = 0; i < len; ++i) s.positions[s.deck[i]] = static_cast<std::uint32_t>(i);
            return labeled_contains_type(s.positions, m, w);
        },
        kSecondSample);

    Observation2Report rep;
    rep.m = m;
    rep.n = n;
    rep.pattern = w;
    rep.cmp = compare(a, b, seed);
    return rep;
}

}  // namespace cis
