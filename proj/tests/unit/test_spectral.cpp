#include "doctest.h"

#include "cis/errors.hpp"
#include "cis/exact.hpp"
#include "cis/spectral.hpp"

#include <cmath>

using namespace cis;

namespace {

double d(const HpReal& x) { return x.convert_to<double>(); }

// -1 - sum alpha^{-1} e^{-alpha}, evaluated independently with mpmath
// polyroots at 50 digits.
constexpr double kClosedForm[] = {
    0.0,
    1.7182818284590452354, 2.7560492270947275483, 3.8006123352952815245,
    4.8333553979776823623, 5.8571293123022103757, 6.874994123365478916,
    7.8888872041663760013, 8.8999996003626317985, 9.9090908285686885111,
    10.916666653887428564, 11.923076922124353548, 12.928571428942630156,
};

}  // namespace

TEST_CASE("truncated_exp") {
    CHECK(truncated_exp(0) == RationalPolynomial({1}));
    CHECK(truncated_exp(1) == RationalPolynomial({1, 1}));
    CHECK(truncated_exp(2) == RationalPolynomial({1, 1, Rational(1, 2)}));
    CHECK(truncated_exp(4)[4] == Rational(1, 24));
}

TEST_CASE("find_roots small m") {
    auto r1 = find_roots(1);
    REQUIRE(r1.roots.size() == 1);
    CHECK(std::abs(d(r1.roots[0].re) + 1) < 1e-30);
    CHECK(std::abs(d(r1.roots[0].im)) < 1e-30);

    auto r2 = find_roots(2);
    REQUIRE(r2.roots.size() == 2);
    for (auto& z : r2.roots) {
        CHECK(std::abs(d(z.re) + 1) < 1e-30);
        CHECK(std::abs(std::abs(d(z.im)) - 1) < 1e-30);
    }
    CHECK(d(r2.roots[0].im) * d(r2.roots[1].im) < 0);

    auto r3 = find_roots(3);
    int real_roots = 0;
    for (auto& z : r3.roots) {
        if (std::abs(d(z.im)) < 1e-20) {
            ++real_roots;
            // real root of x^3 + 3x^2 + 6x + 6, mpmath
            CHECK(std::abs(d(z.re) - (-1.5960716379833215231)) < 1e-15);
        }
    }
    CHECK(real_roots == 1);
    CHECK(power_sum_check(r3).max_deviation < 1e-25);
}

TEST_CASE("RootSet invariants hold up to m = 24") {
    for (int m = 1; m <= 24; ++m) {
        CAPTURE(m);
        const unsigned bits = m <= 16 ? 128 : 192;
        auto rs = find_roots(m, bits);
        CHECK(rs.roots.size() == static_cast<std::size_t>(m));
        CHECK(rs.max_residual() < certification_tolerance(bits));
        CHECK(rs.conjugate_mismatch() < 1e-20);
        if (m > 1) CHECK(rs.min_pairwise_distance() > 1e-6 * m);
    }
}

TEST_CASE("find_roots is deterministic") {
    auto a = find_roots(7, 128);
    auto b = find_roots(7, 128);
    for (std::size_t i = 0; i < a.roots.size(); ++i) {
        CHECK(a.roots[i].re == b.roots[i].re);
        CHECK(a.roots[i].im == b.roots[i].im);
    }
}

TEST_CASE("find_roots double-ish precision") {
    auto rs = find_roots(10, 53);
    CHECK(rs.max_residual() < certification_tolerance(53));
    CHECK(std::abs(d(l1_closed_form(rs).value) - kClosedForm[10]) < 1e-10);
}

TEST_CASE("l1_closed_form") {
    const double e = std::exp(1.0);
    CHECK(std::abs(d(l1_closed_form(1).value) - (e - 1)) < 1e-14);
    CHECK(std::abs(d(l1_closed_form(2).value) - (e * (std::cos(1.0) + std::sin(1.0)) - 1)) < 1e-14);
    for (int m = 1; m <= 12; ++m) {
        CAPTURE(m);
        auto cf = l1_closed_form(m);
        CHECK(std::abs(d(cf.value) - kClosedForm[m]) < 1e-12);
        CHECK(std::abs(cf.imag_residue) < 1e-25);
    }
}

TEST_CASE("l1_closed_form agrees with the exact series for m = 1..8") {
    for (int m = 1; m <= 8; ++m) {
        CAPTURE(m);
        auto s = l1_series(m, 1e-12);
        CHECK(std::abs(d(s.value) - d(l1_closed_form(m).value)) < 1e-8);
    }
}

TEST_CASE("approx_l1 and the decay of the gap") {
    CHECK(approx_l1(2) == doctest::Approx(2.75));
    CHECK(approx_l1(1) == doctest::Approx(5.0 / 3.0));
    CHECK(approx_l1(10) == doctest::Approx(11.0 - 1.0 / 12.0));
    const double gap1 = d(l1_closed_form(1).value) - approx_l1(1);
    CHECK(gap1 == doctest::Approx(0.0516151618).epsilon(1e-6));
    const double gap4 = std::abs(d(l1_closed_form(4).value) - approx_l1(4));
    const double gap12 = std::abs(d(l1_closed_form(12).value) - approx_l1(12));
    CHECK(gap12 < gap4);
    CHECK(gap12 < 0.05);
}

TEST_CASE("power sums of reciprocal zeros") {
    auto rep2 = power_sum_check(find_roots(2));
    REQUIRE(rep2.rows.size() == 4);
    CHECK(std::abs(d(rep2.rows[0].real) + 1) < 1e-30);
    CHECK(std::abs(d(rep2.rows[2].real) - 0.5) < 1e-30);
    CHECK(std::abs(d(rep2.rows[3].real) + 0.5) < 1e-30);
    for (int m = 1; m <= 12; ++m) {
        CAPTURE(m);
        auto rep = power_sum_check(find_roots(m, 128));
        CHECK(rep.max_deviation < 1e-9);
        CHECK(rep.max_newton_deviation < 1e-9);
    }
}

TEST_CASE("Newton identities reproduce the power-sum table exactly") {
    for (int m = 1; m <= 15; ++m) {
        auto p = inverse_power_sums_exact(m, m + 2);
        const Rational inv(BigInt(1), factorial(static_cast<unsigned>(m)));
        CHECK(p[0] == -1);
        for (int t = 2; t <= m; ++t) CHECK(p[t - 1] == 0);
        CHECK(p[m] == inv);
        CHECK(p[m + 1] == -inv);
    }
}

TEST_CASE("reciprocal_series") {
    auto s2 = reciprocal_series(2, 5);
    CHECK(s2.exact[0] == 1);
    CHECK(s2.exact[1] == Rational(-1, 4));
    CHECK(s2.within_envelope());
    auto s4 = reciprocal_series(4, 8);
    for (int k = 1; k <= 8; ++k) CHECK(std::abs(d(s4.coefficients[k])) <= 0.5 * std::pow(1.0 / 3.0, k));
    for (int m = 0; m <= 12; ++m) {
        auto s = reciprocal_series(m, 2 * m + 4);
        CHECK(s.exact[0] == 1);
        CHECK(std::abs(d(s.coefficients[1]) + 1.0 / (m + 2)) < 1e-12);
        CHECK(s.within_envelope());
    }
    CHECK_THROWS_AS(reciprocal_series(3, 1), InvalidArgument);
}

TEST_CASE("root partition diagnostic") {
    auto rep20 = root_partition_diagnostic(find_roots(20, 160), 0.1, 0.2, 0.29);
    CHECK(rep20.small.size() + rep20.large.size() == 20);
    CHECK(rep20.all_ok());

    auto rep1 = root_partition_diagnostic(find_roots(1));
    CHECK(rep1.small.size() == 1);
    CHECK(rep1.large.empty());

    auto rep12 = root_partition_diagnostic(find_roots(12));
    CHECK(rep12.large_sum_ok);
    CHECK(rep12.large_sum_abs <= rep12.large_sum_bound);

    CHECK_THROWS_AS(root_partition_diagnostic(find_roots(3), 0.2, 0.1, 0.29), InvalidArgument);
    CHECK_THROWS_AS(root_partition_diagnostic(find_roots(3), 0.1, 0.2, 0.31), InvalidArgument);
}
