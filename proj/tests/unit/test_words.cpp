#include "doctest.h"
#include "oracles.hpp"

#include "cis/errors.hpp"
#include "cis/words.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <map>
#include <set>

using namespace cis;

TEST_CASE("make_word validates multiplicity and alphabet") {
    Word w = make_word({2, 1, 1, 3, 2, 3}, 2, 3);
    CHECK(w.size() == 6);
    CHECK(w.to_string() == "211323");
    CHECK(make_word({1}, 1, 1).size() == 1);
    CHECK_THROWS_AS(make_word({1, 1, 2}, 2, 2), MultiplicityViolation);
    CHECK_THROWS_AS(make_word({1, 1, 4, 4}, 2, 2), AlphabetViolation);
    CHECK_THROWS_AS(make_word({0, 1}, 1, 2), AlphabetViolation);
    CHECK(parse_word("2 1 1 3 2 3", 2, 3) == w);
}

TEST_CASE("l_start and l1 on the worked examples") {
    Word w = parse_word("2341524315", 2, 5);
    CHECK(l_start(w, 1) == 3);
    CHECK(l_start(w, 2) == 4);
    CHECK(l1(w) == 3);
    CHECK(l_max(w) == 4);
    CHECK(l1(parse_word("211323", 2, 3)) == 3);
    CHECK(l_start(parse_word("1122", 2, 2), 1) == 2);
    CHECK(l1(parse_word("54321", 1, 5)) == 1);
    CHECK(l_max(parse_word("111", 3, 1)) == 1);
}

TEST_CASE("greedy l_start matches exhaustive search for mn <= 10") {
    for (auto [m, n] : {std::pair{1, 6}, {1, 8}, {2, 3}, {2, 4}, {2, 5}, {3, 3}, {5, 2}, {3, 2}}) {
        CAPTURE(m);
        CAPTURE(n);
        std::uint64_t mismatches = 0;
        enumerate_words(m, n, [&](const Word& w) {
            for (int i = 1; i <= n; ++i)
                mismatches += l_start(w, i) != oracle::l_start_exhaustive(w.letters(), i);
        });
        CHECK(mismatches == 0);
    }
}

TEST_CASE("l_max equals the maximum over starts on sampled words") {
    for (std::uint64_t s = 0; s < 200; ++s) {
        RandomSource rng(99, s);
        const int m = 1 + static_cast<int>(s % 4);
        const int n = 1 + static_cast<int>(s % 9);
        Word w = sample_uniform(m, n, rng);
        int best = 0;
        for (int i = 1; i <= n; ++i) best = std::max(best, l_start(w, i));
        CHECK(l_max(w) == best);
    }
}

TEST_CASE("sample_uniform is deterministic per (seed, stream)") {
    RandomSource a(42, 7), b(42, 7), c(42, 8);
    Word wa = sample_uniform(3, 5, a);
    Word wb = sample_uniform(3, 5, b);
    Word wc = sample_uniform(3, 5, c);
    CHECK(wa == wb);
    CHECK_FALSE(wa == wc);
    RandomSource one(1, 0);
    CHECK(sample_uniform(1, 1, one).to_string() == "1");
}

namespace {

double chi_square_statistic(int m, int n, std::uint64_t samples, std::uint64_t seed) {
    std::map<std::string, std::uint64_t> counts;
    for (const Word& w : all_words(m, n)) counts[w.to_string()] = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        RandomSource rng(seed, i);
        ++counts.at(sample_uniform(m, n, rng).to_string());
    }
    const double expected = static_cast<double>(samples) / static_cast<double>(counts.size());
    double chi2 = 0;
    for (auto& [_, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
    return chi2;
}

}  // namespace

TEST_CASE("sample_uniform frequencies on S_{2,2}") {
    const std::uint64_t samples = 60000;
    std::map<std::string, std::uint64_t> counts;
    for (std::uint64_t i = 0; i < samples; ++i) {
        RandomSource rng(5, i);
        ++counts[sample_uniform(2, 2, rng).to_string()];
    }
    REQUIRE(counts.size() == 6);
    const double p = 1.0 / 6.0;
    const double se = std::sqrt(p * (1 - p) / samples);
    for (auto& [w, c] : counts) {
        CAPTURE(w);
        CHECK(std::abs(static_cast<double>(c) / samples - p) < 4 * se);
    }
}

TEST_CASE("sample_uniform passes chi-square at 1e-6 on S_{2,2} and S_{1,4}") {
    for (auto [m, n] : {std::pair{2, 2}, {1, 4}}) {
        const auto cells = static_cast<double>(multiset_count(m, n).convert_to<long>());
        boost::math::chi_squared dist(cells - 1);
        const double critical = boost::math::quantile(boost::math::complement(dist, 1e-6));
        CHECK(chi_square_statistic(m, n, 100000, 11) < critical);
    }
}

TEST_CASE("enumerate_words visits each word once") {
    CHECK(all_words(2, 2).size() == 6);
    CHECK(all_words(1, 3).size() == 6);
    CHECK(all_words(3, 1).size() == 1);
    auto ws = all_words(2, 3);
    std::set<std::string> distinct;
    for (auto& w : ws) distinct.insert(w.to_string());
    CHECK(distinct.size() == 90);
    CHECK_THROWS_AS(enumerate_words(2, 3, [](const Word&) {}, 89), SpaceTooLarge);
    CHECK_THROWS_AS(all_words(3, 8), SpaceTooLarge);
}

TEST_CASE("count_complete_bruteforce") {
    for (int n = 1; n <= 7; ++n) CHECK(count_complete_bruteforce(1, n) == 1);
    CHECK(count_complete_bruteforce(2, 2) == 5);
    CHECK(count_complete_bruteforce(2, 1) == 1);
}

TEST_CASE("multiset_count") {
    CHECK(multiset_count(2, 3) == 90);
    CHECK(multiset_count(2, 2) == 6);
    CHECK(multiset_count(1, 6) == 720);
    CHECK(multiset_count(3, 1) == 1);
}

TEST_CASE("longest_increasing is strict") {
    std::vector<Letter> w{1, 1, 2, 2, 3, 3};
    CHECK(longest_increasing(w) == 3);
    std::vector<Letter> d{3, 2, 1};
    CHECK(longest_increasing(d) == 1);
    std::vector<Letter> mixed{2, 3, 4, 1, 5, 2, 4, 3, 1, 5};
    CHECK(longest_increasing(mixed) == 4);
}
