#pragma once

#include "cis/numeric.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cis {

/// The x >= 2 with Gamma(x) = y, on the increasing branch of Gamma.
/// Throws DomainError for y < 1.
double inverse_gamma(double y);

struct FactorialThreshold {
    int m = 0;
    int t = 0;
    double requested_c = 0;
    /// C after rounding k = t + (C log m / log t) t up to an integer.
    double adjusted_c = 0;
    int k = 0;
    /// k! >= t! m^{Ct}
    bool lower_ok = false;
    /// Only meaningful when upper_applies (t >= m^{10C}).
    bool upper_ok = false;
    bool upper_applies = false;
};

/// Exact big-integer check of t! m^{Ct} <= k! <= t! (1.1)^k m^{Ct}.
FactorialThreshold factorial_threshold(int m, int t, double c);

/// A prefix-closed set of words over [n], described by how many words of
/// each length it has.
class WordFamily {
public:
    enum class Kind { ContinuousRuns, ArithmeticProgressions };

    static WordFamily continuous_runs(int n);
    /// Words a, a+d, ..., a+(k-1)d inside [n] for any integer d (including
    /// d = 0 and d < 0).
    static WordFamily arithmetic_progressions(int n);

    Kind kind() const { return kind_; }
    int n() const { return n_; }
    std::string name() const;
    /// |W_k|, exact.
    BigInt size_at(int k) const;
    /// N with |W_k| <= N for every k (n for runs, n^2 for progressions).
    BigInt size_cap() const;

    /// Membership test; used to check prefix closure on small alphabets.
    bool contains(const std::vector<int>& word) const;

private:
    WordFamily(Kind kind, int n) : kind_(kind), n_(n) {}
    Kind kind_;
    int n_;
};

/// min(1, |W_k| m^k / k!) >= Pr[L(pi; W) >= k].
Rational tail_bound(const WordFamily& family, int m, int k);

struct ExpectationUpper {
    int t = 0;
    int k = 0;
    double bound = 0;
    /// 2m <= k <= 2t; when false the bound is outside its proven regime.
    bool regime_ok = false;
};

/// t with (t-1)! < N <= t!, k = ceil(t + 2 t log m / log t), bound
/// t + 2 t log m / log t + 2 >= E[L(pi; W)] whenever every |W_k| <= N.
ExpectationUpper expectation_upper(int m, const BigInt& family_cap);

using CodeWord = std::vector<std::uint16_t>;

/// A subset of [m]^n with pairwise Hamming distance >= min_distance.
/// Letters are stored 0-based.
struct CodeBook {
    int m = 0;
    int n = 0;
    int min_distance = 0;
    std::vector<CodeWord> words;

    std::size_t size() const { return words.size(); }
};

int hamming_distance(const CodeWord& a, const CodeWord& b);

/// m^n / (delta C(n, delta) (m-1)^delta).
Rational gv_size_bound(int m, int n, int delta);

/// Lexicographic maximal packing of [m]^n with distance >= delta.
/// Throws SpaceTooLarge when m^n exceeds `cap`.
CodeBook greedy_code(int m, int n, int delta, std::uint64_t cap = 10'000'000);

/// Smallest pairwise distance of a code by exhaustive comparison; n + 1 for
/// codes with fewer than two words.
int min_pairwise_distance(const CodeBook& code);

/// Exhaustive pairwise check that every two codewords differ in at least
/// `delta` places. Stops comparing a pair once it has seen delta differences.
bool all_pairs_at_distance(const CodeBook& code, int delta);

/// max(0, |T|/n! (1 - |T|/delta!)) <= Pr[L_{m,n} = n].
Rational completion_lower(int n, const BigInt& code_size, int delta);

struct LowerContAsymptotic {
    /// log of (m/1.03)^n / (2n n!)
    double log_value = 0;
    bool domain_ok = true;
    double value() const;
};

/// Asymptotic lower bound for Pr[L_{m,n} = n]; only valid for n large in
/// terms of m, which is not certified. m = 1 sets domain_ok = false.
LowerContAsymptotic lower_cont_asymptotic(int m, int n);

struct EntropyCheck {
    int n = 0;
    int delta = 0;
    BigInt binom;
    double entropy = 0;       // H(delta/n) in bits
    double log2_binom = 0;
    double log2_bound = 0;    // H(delta/n) * n
    bool holds = false;
};

double binary_entropy(double p);
EntropyCheck entropy_binom_check(int n, int delta);

struct BlockLower {
    double value = 0;
    Rational p_k;
    int blocks = 0;
};

/// 1 - (1 - p_k)^{floor(n/k)} with p_k = Pr[L^1_{m,k} = k], a lower bound for
/// Pr[L_{m,n} >= k].
BlockLower block_lower_bound(int m, int n, int k);

}  // namespace cis
