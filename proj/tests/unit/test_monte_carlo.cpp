#include "doctest.h"

#include "cis/errors.hpp"
#include "cis/exact.hpp"
#include "cis/monte_carlo.hpp"

#include <cmath>

using namespace cis;

TEST_CASE("Estimate summary statistics") {
    std::vector<std::int64_t> v{1, 2, 3, 4};
    auto e = summarize(v, 9);
    CHECK(e.mean == doctest::Approx(2.5));
    CHECK(e.std_error == doctest::Approx(std::sqrt((5.0 / 3.0) / 4.0)));
    CHECK(e.ci95_lo == doctest::Approx(e.mean - 1.96 * e.std_error));
    CHECK(e.ci95_hi == doctest::Approx(e.mean + 1.96 * e.std_error));
    CHECK(e.trials == 4);
    CHECK(e.seed == 9);
}

TEST_CASE("n = 1 is degenerate") {
    auto a = estimate_l1(3, 1, 50, 1);
    CHECK(a.mean == 1.0);
    CHECK(a.std_error == 0.0);
    CHECK(estimate_lmax(2, 1, 50, 1).mean == 1.0);
    CHECK(estimate_lis(4, 1, 50, 1).mean == 1.0);
    CHECK_THROWS_AS(estimate_l1(2, 3, 1, 1), InvalidArgument);
}

TEST_CASE("estimate_l1 is bitwise identical across worker counts") {
    auto a = estimate_l1(3, 20, 3000, 77, {1});
    auto b = estimate_l1(3, 20, 3000, 77, {8});
    auto c = estimate_l1(3, 20, 3000, 77, {3});
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
    CHECK(a.mean == c.mean);
    CHECK(a.std_error == c.std_error);
    auto d = estimate_l1(3, 20, 3000, 78, {1});
    CHECK(d.mean != a.mean);
}

TEST_CASE("estimate_l1 agrees with the exact finite-n expectation") {
    for (auto [m, n] : {std::pair{1, 20}, {2, 12}, {3, 10}, {4, 30}}) {
        CAPTURE(m);
        CAPTURE(n);
        auto est = estimate_l1(m, n, 40000, 1234);
        const double exact = to_double(expected_l1_exact(m, n));
        CHECK(est.within(exact, 4.0));
    }
}

TEST_CASE("L dominates L^1 at matched seeds") {
    auto l1e = estimate_l1(2, 40, 2000, 5, {2});
    auto lme = estimate_lmax(2, 40, 2000, 5, {2});
    CHECK(lme.mean >= l1e.mean);
}

TEST_CASE("moment targets") {
    CHECK(central_moment_coefficient(2) == doctest::Approx(1.0));
    CHECK(central_moment_coefficient(3) == doctest::Approx(1.0));
    CHECK(central_moment_coefficient(4) == doctest::Approx(3.0));
    CHECK(central_moment_coefficient(5) == doctest::Approx(10.0));
    CHECK(central_moment_coefficient(6) == doctest::Approx(15.0));
    CHECK(raw_moment_target(5, 1) == doctest::Approx(6.0));
    CHECK(raw_moment_target(3, 2) == doctest::Approx(9.0 + 3.0 * 3.0));
}

TEST_CASE("moments are internally consistent") {
    auto rep = moments(4, 40, 4, 20000, 3);
    REQUIRE(rep.central.size() == 3);
    REQUIRE(rep.raw.size() == 4);
    const double mean = rep.raw_at(1).value;
    CHECK(rep.mu == doctest::Approx(mean));
    const double var_from_raw = rep.raw_at(2).value - mean * mean;
    CHECK(std::abs(rep.central_at(2).value - var_from_raw) <= 1e-6 * std::abs(var_from_raw));
    CHECK(rep.central_at(2).value >= 0);
    CHECK(rep.central_at(4).target == doctest::Approx(3.0 * 16.0));
    CHECK(rep.raw_at(1).target == doctest::Approx(5.0));
    CHECK_FALSE(rep.caveat.empty());
    CHECK_THROWS_AS(moments(4, 40, 9, 100, 3), InvalidArgument);
}

TEST_CASE("variance is close to m for moderately large m") {
    auto rep = moments(9, 200, 2, 100000, 17);
    CHECK(rep.central_at(2).value / 9.0 == doctest::Approx(1.0).epsilon(0.10));
}

TEST_CASE("observation 1 checks") {
    auto a = check_observation1(2, 6, 2, 50000, 8);
    CHECK(a.exact == Rational(5, 6));
    CHECK(std::abs(a.cmp.z()) < 4);
    CHECK(std::abs(a.cmp.freq_a - 5.0 / 6.0) < 4 * a.cmp.se_a);
    auto one = check_observation1(3, 5, 1, 100, 8);
    CHECK(one.cmp.freq_a == 1.0);
    CHECK(one.cmp.freq_b == 1.0);
    CHECK(one.cmp.z() == 0.0);
    CHECK_THROWS_AS(check_observation1(2, 3, 4, 100, 1), InvalidArgument);
}

TEST_CASE("observation 2 checks") {
    std::vector<Letter> single{1};
    auto a = check_observation2(3, 4, single, 500, 2);
    CHECK(a.cmp.freq_a == 1.0);
    CHECK(a.cmp.freq_b == 1.0);

    std::vector<Letter> w12{1, 2};
    auto b = check_observation2(2, 3, w12, 50000, 2);
    CHECK(std::abs(b.cmp.freq_a - 5.0 / 6.0) < 4 * b.cmp.se_a);
    CHECK(std::abs(b.cmp.freq_b - 5.0 / 6.0) < 4 * b.cmp.se_b);

    std::vector<Letter> repeated{2, 2};
    CHECK_THROWS_AS(check_observation2(2, 3, repeated, 100, 1), InvalidArgument);
}

TEST_CASE("labeled type detection") {
    // tau' = 3_1 2_1 3_2 1_2 2_2 1_1 with m = 2: id = (v-1)*2 + (suit-1)
    std::vector<std::uint32_t> deck{4, 2, 5, 1, 3, 0};
    std::vector<std::uint32_t> pos(6);
    for (std::uint32_t i = 0; i < 6; ++i) pos[deck[i]] = i;
    std::vector<Letter> w12{1, 2}, w123{1, 2, 3}, w32{3, 2};
    CHECK(labeled_contains_type(pos, 2, w12));
    CHECK_FALSE(labeled_contains_type(pos, 2, w123));
    CHECK(labeled_contains_type(pos, 2, w32));
}

TEST_CASE("longest increasing subsequence probe") {
    auto one = estimate_lis(1, 100, 2000, 4);
    auto two = estimate_lis(2, 100, 2000, 4);
    CHECK(two.mean >= one.mean);
}
