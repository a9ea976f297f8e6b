#include "doctest.h"
#include "oracles.hpp"

#include "cis/bounds.hpp"
#include "cis/errors.hpp"
#include "cis/exact.hpp"
#include "cis/words.hpp"

#include <cmath>
#include <set>

using namespace cis;

TEST_CASE("inverse_gamma") {
    CHECK(inverse_gamma(24.0) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(inverse_gamma(1.0) == 2.0);
    const double x = inverse_gamma(1e5);
    CHECK(x > 9.0);
    CHECK(x < 10.0);
    CHECK(x == doctest::Approx(9.4195681768776980).epsilon(1e-10));  // mpmath findroot
    CHECK_THROWS_AS(inverse_gamma(0.5), DomainError);
    for (double g = 2.0; g <= 40.0; g += 0.37) {
        CAPTURE(g);
        CHECK(std::abs(inverse_gamma(std::tgamma(g)) - g) < 1e-9 * g);
    }
}

TEST_CASE("factorial_threshold") {
    auto one = factorial_threshold(1, 7, 1.0);
    CHECK(one.k == 7);
    CHECK(one.lower_ok);
    CHECK(one.upper_ok);

    auto big = factorial_threshold(2, 2048, 0.1);
    CHECK(big.k == 2067);
    CHECK(big.adjusted_c >= 0.1);
    CHECK(big.adjusted_c == doctest::Approx(19.0 * std::log(2048.0) / (2048.0 * std::log(2.0))));
    CHECK(big.upper_applies);
    CHECK(big.lower_ok);
    CHECK(big.upper_ok);

    auto small = factorial_threshold(3, 10, 2.0);
    CHECK(small.k == 20);
    CHECK(small.lower_ok);
    CHECK_FALSE(small.upper_applies);

    for (int m = 1; m <= 6; ++m)
        for (int t = 2; t <= 60; t += 3)
            for (double c : {0.05, 0.5, 1.0, 3.0}) CHECK(factorial_threshold(m, t, c).lower_ok);
}

TEST_CASE("word families") {
    auto runs = WordFamily::continuous_runs(4);
    CHECK(runs.size_at(1) == 4);
    CHECK(runs.size_at(4) == 1);
    CHECK(runs.size_at(5) == 0);
    CHECK(runs.size_cap() == 4);

    for (int n : {3, 5, 8}) {
        auto ap = WordFamily::arithmetic_progressions(n);
        CHECK(ap.size_at(2) == n * n);
        for (int k = 1; k <= n + 1; ++k) CHECK(ap.size_at(k) <= ap.size_cap());
    }
    // brute-force count and prefix closure over all words of length <= 4 on [4]
    for (auto family : {WordFamily::continuous_runs(4), WordFamily::arithmetic_progressions(4)}) {
        std::vector<int> word;
        for (int k = 1; k <= 4; ++k) {
            std::uint64_t count = 0;
            std::vector<int> w(static_cast<std::size_t>(k), 1);
            while (true) {
                if (family.contains(w)) {
                    ++count;
                    for (int l = 1; l < k; ++l) CHECK(family.contains(std::vector<int>(w.begin(), w.begin() + l)));
                }
                int pos = k - 1;
                while (pos >= 0 && w[pos] == 4) w[pos--] = 1;
                if (pos < 0) break;
                ++w[pos];
            }
            CHECK(family.size_at(k) == count);
        }
    }
}

TEST_CASE("tail_bound") {
    auto runs4 = WordFamily::continuous_runs(4);
    CHECK(tail_bound(runs4, 1, 4) == Rational(1, 24));
    CHECK(tail_bound(runs4, 1, 3) == Rational(2, 6));
    CHECK(tail_bound(runs4, 3, 1) == 1);
    CHECK(tail_bound(WordFamily::continuous_runs(9), 7, 1) == 1);
}

TEST_CASE("tail_bound dominates the exact tail on enumerable instances") {
    for (auto [m, n] : {std::pair{1, 4}, {1, 6}, {2, 3}, {2, 4}, {3, 3}, {2, 5}, {4, 2}}) {
        CAPTURE(m);
        CAPTURE(n);
        auto hist = oracle::lmax_histogram(m, n);
        const Rational total(multiset_count(m, n));
        auto family = WordFamily::continuous_runs(n);
        for (int k = 1; k <= n; ++k) {
            BigInt at_least = 0;
            for (auto& [len, c] : hist)
                if (len >= k) at_least += c;
            const Rational exact = Rational(at_least) / total;
            CHECK(exact <= tail_bound(family, m, k));
            CHECK(to_double(exact) >= block_lower_bound(m, n, k).value - 1e-12);
        }
    }
}

TEST_CASE("expectation_upper") {
    auto a = expectation_upper(1, BigInt(120));
    CHECK(a.t == 5);
    CHECK(a.bound == doctest::Approx(7.0));
    auto b = expectation_upper(2, BigInt(1000000));
    CHECK(b.t == 10);
    CHECK(b.bound == doctest::Approx(18.0206).epsilon(1e-4));
    CHECK(b.k == 17);
    CHECK(b.regime_ok);
}

TEST_CASE("greedy_code examples") {
    auto all = greedy_code(2, 4, 1);
    CHECK(all.size() == 16);
    auto two = greedy_code(2, 4, 2);
    CHECK(two.size() >= 2);
    CHECK(min_pairwise_distance(two) >= 2);
    CHECK(Rational(two.size()) >= gv_size_bound(2, 4, 2));
    auto three = greedy_code(3, 4, 2);
    CHECK(gv_size_bound(3, 4, 2) == Rational(27, 16));
    CHECK(three.size() >= 2);
    CHECK(min_pairwise_distance(three) >= 2);
    CHECK(three.words.front() == CodeWord{0, 0, 0, 0});
    CHECK_THROWS_AS(greedy_code(2, 4, 3), InvalidArgument);
    CHECK_THROWS_AS(greedy_code(1, 4, 1), InvalidArgument);
    CHECK_THROWS_AS(greedy_code(10, 8, 2, 1000), SpaceTooLarge);
}

TEST_CASE("greedy_code is a maximal packing meeting the GV size") {
    for (int m = 2; m <= 5; ++m)
        for (int n = 2; n <= 8; ++n) {
            if (std::pow(m, n) > 1e4) continue;
            for (int delta = 1; 2 * delta <= n; ++delta) {
                CAPTURE(m);
                CAPTURE(n);
                CAPTURE(delta);
                auto code = greedy_code(m, n, delta);
                CHECK(min_pairwise_distance(code) >= delta);
                CHECK(Rational(code.size()) >= gv_size_bound(m, n, delta));
                std::set<CodeWord> members(code.words.begin(), code.words.end());
                CHECK(members.size() == code.size());
            }
        }
}

TEST_CASE("completion_lower") {
    // |T|/n! (1 - |T|/delta!) with |T| = 1: (1/120)(5/6)
    CHECK(completion_lower(5, BigInt(1), 3) == Rational(1, 144));
    CHECK(completion_lower(5, BigInt(1), 3) <= Rational(1, 120));
    CHECK(completion_lower(3, BigInt(8), 1) == 0);
    // S_{2,3}: the best greedy-code bound stays below the exact probability
    Rational exact = complete_prob(2, 3);
    Rational best = completion_lower(3, BigInt(1), 1);
    auto code = greedy_code(2, 3, 1);
    best = std::max(best, completion_lower(3, BigInt(code.size()), 1));
    CHECK(best <= exact);
    CHECK_THROWS_AS(completion_lower(3, BigInt(0), 1), InvalidArgument);
}

TEST_CASE("lower_cont_asymptotic") {
    auto b = lower_cont_asymptotic(2, 10);
    const double direct = std::log(std::pow(2.0 / 1.03, 10) / (2.0 * 10 * std::tgamma(11.0)));
    CHECK(b.log_value == doctest::Approx(direct).epsilon(1e-12));
    CHECK(b.log_value == doctest::Approx(-11.464261063445496));
    auto ratio = [](int n) { return lower_cont_asymptotic(2, n).log_value + std::lgamma(n + 1.0); };
    CHECK(ratio(50) > ratio(20));
    CHECK_FALSE(lower_cont_asymptotic(1, 10).domain_ok);
}

TEST_CASE("entropy_binom_check") {
    auto a = entropy_binom_check(10, 5);
    CHECK(a.binom == 252);
    CHECK(a.entropy == doctest::Approx(1.0));
    CHECK(a.holds);
    CHECK(entropy_binom_check(10, 0).holds);
    CHECK(entropy_binom_check(20, 4).holds);
    for (int n = 1; n <= 60; ++n)
        for (int delta = 0; delta <= n; ++delta) CHECK(entropy_binom_check(n, delta).holds);
}

TEST_CASE("block_lower_bound") {
    auto m1 = block_lower_bound(1, 24, 3);
    CHECK(m1.p_k == Rational(1, 6));
    CHECK(m1.blocks == 8);
    CHECK(m1.value == doctest::Approx(1 - std::pow(5.0 / 6.0, 8)));
    CHECK(block_lower_bound(3, 10, 1).value == 1.0);
    for (int k = 1; k <= 6; ++k)
        CHECK(block_lower_bound(1, 12, k).p_k == Rational(BigInt(1), factorial(static_cast<unsigned>(k))));

    // Monte Carlo oracle for Pr[L_{1,24} >= 3]
    const std::uint64_t trials = 100000;
    std::uint64_t hits = 0;
    std::vector<Letter> buf;
    for (std::uint64_t i = 0; i < trials; ++i) {
        RandomSource rng(2024, i);
        sample_uniform_into(1, 24, rng, buf);
        hits += l_max(buf, 24) >= 3;
    }
    const double p = static_cast<double>(hits) / trials;
    const double se = std::sqrt(p * (1 - p) / trials);
    CHECK(p + 4 * se >= m1.value);
}
