#pragma once

#include "cis/numeric.hpp"
#include "cis/words.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cis {

/// Sample mean of i.i.d. trials. std_error = sample std / sqrt(trials),
/// ci95 = mean +- 1.96 std_error.
struct Estimate {
    double mean = 0;
    double std_error = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    double ci95_lo = 0;
    double ci95_hi = 0;

    /// |mean - target| <= sigmas * std_error + slack
    bool within(double target, double sigmas, double slack = 0.0) const;
};

/// Builds an Estimate from per-trial values, summing in index order.
Estimate summarize(std::span<const std::int64_t> values, std::uint64_t seed);

struct McOptions {
    /// 0 = default_threads()
    unsigned threads = 0;
};

/// E[L^1_{m,n}] over uniform words; trial i uses stream i of `seed`.
Estimate estimate_l1(int m, int n, std::uint64_t trials, std::uint64_t seed, McOptions opt = {});
/// E[L_{m,n}]; same streams as estimate_l1, so L >= L^1 trial by trial.
Estimate estimate_lmax(int m, int n, std::uint64_t trials, std::uint64_t seed, McOptions opt = {});
/// E of the longest strictly increasing subsequence.
Estimate estimate_lis(int m, int n, std::uint64_t trials, std::uint64_t seed, McOptions opt = {});

struct MomentRow {
    int r = 0;
    double value = 0;
    double std_error = 0;
    /// Conjectured leading behaviour at this (m, r).
    double target = 0;
};

struct MomentReport {
    int m = 0;
    int n = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    double mu = 0;
    double mu_std_error = 0;
    /// r = 2..r_max, E[(L^1 - mu)^r] against c_r m^{floor(r/2)}
    std::vector<MomentRow> central;
    /// r = 1..r_max, E[(L^1)^r] against m^r + C(r+1,2) m^{r-1}
    std::vector<MomentRow> raw;
    /// Central moments use the in-sample mean, which biases them by O(1/trials).
    std::string caveat;

    const MomentRow& central_at(int r) const { return central.at(static_cast<std::size_t>(r - 2)); }
    const MomentRow& raw_at(int r) const { return raw.at(static_cast<std::size_t>(r - 1)); }
};

/// c_r = r!/(2^{r/2} (r/2)!) for even r, r!/(3 * 2^{(r-1)/2} ((r-3)/2)!) for odd r >= 3.
double central_moment_coefficient(int r);
double raw_moment_target(int m, int r);

inline constexpr int kMaxMomentOrder = 8;
MomentReport moments(int m, int n, int r_max, std::uint64_t trials, std::uint64_t seed, McOptions opt = {});

/// Two-sample comparison of empirical frequencies.
struct FrequencyComparison {
    double freq_a = 0;
    double freq_b = 0;
    double se_a = 0;
    double se_b = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    double pooled_se() const;
    /// (freq_a - freq_b) / pooled_se, or 0 when both are degenerate.
    double z() const;
};

struct Observation1Report {
    int m = 0, n = 0, k = 0;
    /// a: Pr[L^1_{m,n} >= k] on S_{m,n}; b: Pr[L^1_{m,k} = k] on S_{m,k}
    FrequencyComparison cmp;
    Rational exact;
};

Observation1Report check_observation1(int m, int n, int k, std::uint64_t trials, std::uint64_t seed,
                                      McOptions opt = {});

struct Observation2Report {
    int m = 0, n = 0;
    std::vector<Letter> pattern;
    /// a: pi in S_{m,n} contains the pattern; b: a labeled shuffle in
    /// S*_{m,n} contains a subsequence of the pattern's type
    FrequencyComparison cmp;
};

/// Letters of `pattern` must be distinct and in [n].
Observation2Report check_observation2(int m, int n, std::span<const Letter> pattern,
                                      std::uint64_t trials, std::uint64_t seed, McOptions opt = {});

/// True when a labeled shuffle (card ids 0..mn-1, value id/m + 1) has a
/// subsequence whose values spell `pattern` (distinct letters).
bool labeled_contains_type(std::span<const std::uint32_t> positions, int m, std::span<const Letter> pattern);

}  // namespace cis
