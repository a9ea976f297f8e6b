#include "cis/bounds.hpp"

#include "cis/errors.hpp"
#include "cis/exact.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace cis {

double inverse_gamma(double y) {
    if (!(y >= 1.0) || !std::isfinite(y))
        throw DomainError("inverse_gamma needs a finite y >= 1");
    if (y == 1.0) return 2.0;
    const double target = std::log(y);
    auto f = [target](double x) { return std::lgamma(x) - target; };
    double hi = 4.0;
    while (f(hi) < 0) hi *= 2.0;
    std::uintmax_t max_iter = 200;
    auto [lo_x, hi_x] = boost::math::tools::toms748_solve(
        f, 2.0, hi, f(2.0), f(hi), boost::math::tools::eps_tolerance<double>(48), max_iter);
    return 0.5 * (lo_x + hi_x);
}

FactorialThreshold factorial_threshold(int m, int t, double c) {
    if (m < 1 || t < 2) throw InvalidArgument("factorial_threshold needs m >= 1 and t >= 2");
    if (!(c > 0)) throw InvalidArgument("factorial_threshold needs C > 0");
    FactorialThreshold out;
    out.m = m;
    out.t = t;
    out.requested_c = c;
    if (m == 1) {
        out.k = t;
        out.adjusted_c = c;
    } else {
        const double lt = std::log(static_cast<double>(t));
        const double lm = std::log(static_cast<double>(m));
        const double extra = c * lm / lt * t;
        double rounded = std::round(extra);
        if (std::abs(extra - rounded) > 1e-9 * std::max(1.0, extra)) rounded = std::ceil(extra);
        out.k = t + static_cast<int>(rounded);
        out.adjusted_c = (out.k - t) * lt / (t * lm);
    }
    const auto ut = static_cast<unsigned>(t);
    const auto uk = static_cast<unsigned>(out.k);
    // With k - t = C t log m / log t we have m^{Ct} = t^{k-t} exactly.
    BigInt m_ct;
    mpz_ui_pow_ui(m_ct.backend().data(), ut, uk - ut);
    if (m == 1) m_ct = 1;
    const BigInt kf = factorial(uk);
    const BigInt tf = factorial(ut);
    out.lower_ok = kf >= tf * m_ct;
    // t >= m^{10C}  <=>  log t >= 10 (k-t) log t / t  <=>  t >= 10 (k-t)
    out.upper_applies = (m == 1) || t >= 10 * (out.k - t);
    BigInt eleven_k, ten_k;
    mpz_ui_pow_ui(eleven_k.backend().data(), 11, uk);
    mpz_ui_pow_ui(ten_k.backend().data(), 10, uk);
    out.upper_ok = kf * ten_k <= tf * eleven_k * m_ct;
    return out;
}

WordFamily WordFamily::continuous_runs(int n) {
    if (n < 1) throw InvalidArgument("alphabet size must be positive");
    return WordFamily(Kind::ContinuousRuns, n);
}

WordFamily WordFamily::arithmetic_progressions(int n) {
    if (n < 1) throw InvalidArgument("alphabet size must be positive");
    return WordFamily(Kind::ArithmeticProgressions, n);
}

std::string WordFamily::name() const {
    return kind_ == Kind::ContinuousRuns ? "continuous" : "arithmetic";
}

BigInt WordFamily::size_at(int k) const {
    if (k < 1) return BigInt(0);
    if (kind_ == Kind::ContinuousRuns) return BigInt(std::max(0, n_ - k + 1));
    if (k == 1) return BigInt(n_);
    BigInt total = n_;  // d = 0
    for (long d = 1; (k - 1) * d < n_; ++d) total += 2 * (n_ - (k - 1) * d);
    return total;
}

BigInt WordFamily::size_cap() const {
    return kind_ == Kind::ContinuousRuns ? BigInt(n_) : BigInt(n_) * n_;
}

bool WordFamily::contains(const std::vector<int>& word) const {
    if (word.empty()) return false;
    for (int v : word)
        if (v < 1 || v > n_) return false;
    if (word.size() == 1) return true;
    const int d = word[1] - word[0];
    if (kind_ == Kind::ContinuousRuns && d != 1) return false;
    for (std::size_t i = 1; i < word.size(); ++i)
        if (word[i] - word[i - 1] != d) return false;
    return true;
}

Rational tail_bound(const WordFamily& family, int m, int k) {
    if (m < 1 || k < 1) throw InvalidArgument("tail_bound needs m, k >= 1");
    BigInt mk;
    mpz_ui_pow_ui(mk.backend().data(), static_cast<unsigned>(m), static_cast<unsigned>(k));
    Rational b(family.size_at(k) * mk, factorial(static_cast<unsigned>(k)));
    return b > 1 ? Rational(1) : b;
}

ExpectationUpper expectation_upper(int m, const BigInt& family_cap) {
    if (m < 1) throw InvalidArgument("expectation_upper needs m >= 1");
    if (family_cap < 1) throw InvalidArgument("family size cap must be positive");
    ExpectationUpper out;
    int t = 1;
    BigInt tf = 1;
    while (tf < family_cap) {
        ++t;
        tf *= t;
    }
    const bool t_ok = t >= 2;
    t = std::max(t, 2);
    const double extra = 2.0 * std::log(static_cast<double>(m)) / std::log(static_cast<double>(t)) * t;
    out.t = t;
    out.k = static_cast<int>(std::ceil(t + extra - 1e-12));
    out.bound = t + extra + 2.0;
    out.regime_ok = t_ok && 2 * m <= out.k && out.k <= 2 * t;
    return out;
}

int hamming_distance(const CodeWord& a, const CodeWord& b) {
    int d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
    return d;
}

Rational gv_size_bound(int m, int n, int delta) {
    BigInt mn, m1d;
    mpz_ui_pow_ui(mn.backend().data(), static_cast<unsigned>(m), static_cast<unsigned>(n));
    mpz_ui_pow_ui(m1d.backend().data(), static_cast<unsigned>(m - 1), static_cast<unsigned>(delta));
    return Rational(mn, BigInt(delta) * binomial(static_cast<unsigned>(n), static_cast<unsigned>(delta)) * m1d);
}

CodeBook greedy_code(int m, int n, int delta, std::uint64_t cap) {
    if (m < 2 || m > 65535) throw InvalidArgument("greedy_code needs 2 <= m <= 65535");
    if (n < 1 || delta < 1 || 2 * delta > n)
        throw InvalidArgument("greedy_code needs 1 <= delta <= n/2");
    std::uint64_t space = 1;
    for (int i = 0; i < n; ++i) {
        if (space > cap / static_cast<std::uint64_t>(m))
            throw SpaceTooLarge("m^n exceeds code enumeration cap " + std::to_string(cap));
        space *= static_cast<std::uint64_t>(m);
    }

    // Word x <-> base-m index with x[0] most significant, so index order is
    // lexicographic order. A word is admissible iff no admitted word lies
    // within distance delta-1, i.e. iff it is not covered by any ball.
    std::vector<std::uint64_t> place(static_cast<std::size_t>(n));
    for (int i = n - 1, p = 0; i >= 0; --i, ++p)
        place[i] = p == 0 ? 1 : place[i + 1] * static_cast<std::uint64_t>(m);
    std::vector<std::uint8_t> covered(space, 0);

    CodeBook code;
    code.m = m;
    code.n = n;
    code.min_distance = delta;
    CodeWord x(static_cast<std::size_t>(n));

    auto mark_ball = [&](std::uint64_t center) {
        // Change up to delta-1 coordinates, positions strictly increasing.
        auto rec = [&](auto&& self, int from, int budget, std::uint64_t idx) -> void {
            covered[idx] = 1;
            if (budget == 0) return;
            for (int pos = from; pos < n; ++pos) {
                const std::uint64_t base = idx - x[pos] * place[pos];
                for (int v = 0; v < m; ++v) {
                    if (v == x[pos]) continue;
                    self(self, pos + 1, budget - 1, base + static_cast<std::uint64_t>(v) * place[pos]);
                }
            }
        };
        rec(rec, 0, delta - 1, center);
    };

    for (std::uint64_t idx = 0; idx < space; ++idx) {
        if (covered[idx]) continue;
        std::uint64_t r = idx;
        for (int i = n - 1; i >= 0; --i) {
            x[i] = static_cast<std::uint16_t>(r % static_cast<std::uint64_t>(m));
            r /= static_cast<std::uint64_t>(m);
        }
        code.words.push_back(x);
        mark_ball(idx);
    }
    return code;
}

int min_pairwise_distance(const CodeBook& code) {
    int best = code.n + 1;
    for (std::size_t i = 0; i < code.words.size(); ++i)
        for (std::size_t j = i + 1; j < code.words.size(); ++j)
            best = std::min(best, hamming_distance(code.words[i], code.words[j]));
    return best;
}

bool all_pairs_at_distance(const CodeBook& code, int delta) {
    const std::size_t len = static_cast<std::size_t>(code.n);
    for (std::size_t i = 0; i < code.words.size(); ++i) {
        const auto* a = code.words[i].data();
        for (std::size_t j = i + 1; j < code.words.size(); ++j) {
            const auto* b = code.words[j].data();
            int diff = 0;
            for (std::size_t p = 0; p < len && diff < delta; ++p) diff += a[p] != b[p];
            if (diff < delta) return false;
        }
    }
    return true;
}

Rational completion_lower(int n, const BigInt& code_size, int delta) {
    if (n < 1 || delta < 1 || code_size < 1)
        throw InvalidArgument("completion_lower needs n, delta, |T| >= 1");
    Rational t(code_size);
    Rational b = t / Rational(factorial(static_cast<unsigned>(n))) *
                 (Rational(1) - t / Rational(factorial(static_cast<unsigned>(delta))));
    return b < 0 ? Rational(0) : b;
}

double LowerContAsymptotic::value() const { return domain_ok ? std::exp(log_value) : std::nan(""); }

LowerContAsymptotic lower_cont_asymptotic(int m, int n) {
    if (n < 1) throw InvalidArgument("lower_cont_asymptotic needs n >= 1");
    LowerContAsymptotic out;
    if (m < 2) {
        out.domain_ok = false;
        out.log_value = std::nan("");
        return out;
    }
    out.log_value = n * std::log(m / 1.03) - std::log(2.0 * n) - std::lgamma(n + 1.0);
    return out;
}

double binary_entropy(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

EntropyCheck entropy_binom_check(int n, int delta) {
    if (n < 1 || delta < 0 || delta > n) throw InvalidArgument("entropy_binom_check needs 0 <= delta <= n");
    EntropyCheck out;
    out.n = n;
    out.delta = delta;
    out.binom = binomial(static_cast<unsigned>(n), static_cast<unsigned>(delta));
    out.entropy = binary_entropy(static_cast<double>(delta) / n);
    out.log2_bound = out.entropy * n;
    long exp2 = 0;
    const double mant = mpz_get_d_2exp(&exp2, out.binom.backend().data());
    out.log2_binom = std::log2(mant) + static_cast<double>(exp2);
    if (delta == 0 || delta == n)
        out.holds = out.binom == 1;
    else
        out.holds = out.log2_binom <= out.log2_bound;
    return out;
}

BlockLower block_lower_bound(int m, int n, int k) {
    if (m < 1 || k < 1 || k > n) throw InvalidArgument("block_lower_bound needs 1 <= k <= n");
    BlockLower out;
    out.p_k = complete_prob(m, k, CompletionEngine::GeneratingFunction);
    out.blocks = n / k;
    const double p = to_double(out.p_k);
    out.value = p >= 1.0 ? 1.0 : -std::expm1(out.blocks * std::log1p(-p));
    return out;
}

}  // namespace cis
