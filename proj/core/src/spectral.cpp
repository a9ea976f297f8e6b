#include "cis/spectral.hpp"

#include "cis/errors.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace cis {

HpComplex& HpComplex::operator+=(const HpComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
}

HpComplex& HpComplex::operator-=(const HpComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
}

HpComplex& HpComplex::operator*=(const HpComplex& o) {
    HpReal r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
}

HpComplex& HpComplex::operator/=(const HpComplex& o) {
    HpReal d = o.re * o.re + o.im * o.im;
    HpReal r = (re * o.re + im * o.im) / d;
    im = (im * o.re - re * o.im) / d;
    re = std::move(r);
    return *this;
}

HpReal abs(const HpComplex& z) { return boost::multiprecision::hypot(z.re, z.im); }

HpComplex exp(const HpComplex& z) {
    HpReal mag = boost::multiprecision::exp(z.re);
    return {mag * boost::multiprecision::cos(z.im), mag * boost::multiprecision::sin(z.im)};
}

HpComplex inverse(const HpComplex& z) { return HpComplex(HpReal(1)) / z; }

HpComplex pow(const HpComplex& z, int exponent) {
    HpComplex base = exponent < 0 ? inverse(z) : z;
    unsigned e = static_cast<unsigned>(exponent < 0 ? -exponent : exponent);
    HpComplex out(HpReal(1));
    while (e) {
        if (e & 1u) out *= base;
        base *= base;
        e >>= 1u;
    }
    return out;
}

HpComplex conj(const HpComplex& z) { return {z.re, -z.im}; }

RationalPolynomial truncated_exp(int m) {
    if (m < 0) throw InvalidArgument("truncated_exp needs m >= 0");
    std::vector<Rational> c(static_cast<std::size_t>(m) + 1);
    for (int k = 0; k <= m; ++k) c[k] = Rational(BigInt(1), factorial(static_cast<unsigned>(k)));
    return RationalPolynomial(std::move(c));
}

namespace {

unsigned working_bits(int m, unsigned bits) { return bits + 32 + 2 * static_cast<unsigned>(m); }

/// Monic m! * E_m(x): coefficient of x^k is m!/k!.
std::vector<HpReal> monic_coefficients(int m) {
    const auto um = static_cast<unsigned>(m);
    const BigInt mf = factorial(um);
    std::vector<HpReal> c(um + 1);
    for (unsigned k = 0; k <= um; ++k) c[k] = HpReal(mf / factorial(k));
    return c;
}

void horner(const std::vector<HpReal>& c, const HpComplex& z, HpComplex& p, HpComplex& dp) {
    p = HpComplex(c.back());
    dp = HpComplex();
    for (std::size_t k = c.size() - 1; k-- > 0;) {
        dp = dp * z + p;
        p = p * z + HpComplex(c[k]);
    }
}

double to_d(const HpReal& x) { return x.convert_to<double>(); }

}  // namespace

double certification_tolerance(unsigned bits) { return std::pow(10.0, -static_cast<double>(bits) / 4.0); }

RootSet find_roots(int m, unsigned bits) {
    if (m < 1) throw InvalidArgument("find_roots needs m >= 1");
    if (bits < 24) throw InvalidArgument("precision must be at least 24 bits");
    const unsigned wbits = working_bits(m, bits);
    PrecisionScope scope(wbits);

    const std::vector<HpReal> coeffs = monic_coefficients(m);
    const HpReal pi = boost::math::constants::pi<HpReal>();
    std::vector<HpComplex> z(static_cast<std::size_t>(m));
    const HpReal radius = HpReal(m) / 2;
    for (int k = 0; k < m; ++k) {
        HpReal theta = 2 * pi * (HpReal(k) + HpReal(0.25)) / m;
        z[k] = HpComplex(radius * boost::multiprecision::cos(theta), radius * boost::multiprecision::sin(theta));
    }

    const HpReal step_tol = boost::multiprecision::ldexp(HpReal(1), -static_cast<int>(wbits) + 12);
    const int max_iter = 500 + 50 * m;
    HpComplex p, dp;
    int iter = 0;
    bool converged = false;
    for (; iter < max_iter && !converged; ++iter) {
        HpReal max_step = 0;
        for (int i = 0; i < m; ++i) {
            horner(coeffs, z[i], p, dp);
            if (p.re == 0 && p.im == 0) continue;
            HpComplex newton = p / dp;
            HpComplex repulsion;
            for (int j = 0; j < m; ++j)
                if (j != i) repulsion += inverse(z[i] - z[j]);
            HpComplex step = newton / (HpComplex(HpReal(1)) - newton * repulsion);
            z[i] -= step;
            HpReal scale = std::max(HpReal(1), abs(z[i]));
            max_step = std::max(max_step, HpReal(abs(step) / scale));
        }
        converged = max_step < step_tol;
    }
    if (!converged)
        throw NoConvergence("Aberth iteration for E_" + std::to_string(m) + " did not converge in " +
                            std::to_string(max_iter) + " iterations at " + std::to_string(bits) + " bits");

    for (auto& root : z) {
        for (int k = 0; k < 3; ++k) {
            horner(coeffs, root, p, dp);
            if (p.re == 0 && p.im == 0) break;
            root -= p / dp;
        }
    }

    std::sort(z.begin(), z.end(), [](const HpComplex& a, const HpComplex& b) {
        if (a.re != b.re) return a.re < b.re;
        return a.im < b.im;
    });

    RootSet out;
    out.m = m;
    out.bits = bits;
    out.iterations = iter;
    const HpReal mf = HpReal(factorial(static_cast<unsigned>(m)));
    for (auto& root : z) {
        horner(coeffs, root, p, dp);
        out.residuals.push_back(abs(p) / mf);
    }
    out.roots = std::move(z);

    const double tol = certification_tolerance(bits);
    if (out.max_residual() >= tol)
        throw NoConvergence("root residual " + std::to_string(out.max_residual()) +
                            " above certification tolerance at " + std::to_string(bits) + " bits");
    if (m > 1 && out.min_pairwise_distance() <= 1e-6 * m)
        throw NoConvergence("roots of E_" + std::to_string(m) + " not separated");
    if (out.conjugate_mismatch() > std::sqrt(tol))
        throw NoConvergence("root set of E_" + std::to_string(m) + " not closed under conjugation");
    return out;
}

double RootSet::max_residual() const {
    double worst = 0.0;
    for (const auto& r : residuals) worst = std::max(worst, to_d(r));
    return worst;
}

double RootSet::min_pairwise_distance() const {
    PrecisionScope scope(working_bits(m, bits));
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            best = std::min(best, to_d(abs(roots[i] - roots[j])));
    return best;
}

double RootSet::conjugate_mismatch() const {
    PrecisionScope scope(working_bits(m, bits));
    double worst = 0.0;
    for (const auto& r : roots) {
        HpComplex c = conj(r);
        double nearest = std::numeric_limits<double>::infinity();
        for (const auto& s : roots) nearest = std::min(nearest, to_d(abs(c - s)));
        worst = std::max(worst, nearest);
    }
    return worst;
}

ClosedFormResult l1_closed_form(const RootSet& rs) {
    PrecisionScope scope(working_bits(rs.m, rs.bits));
    HpComplex sum;
    for (const auto& a : rs.roots) sum += inverse(a) * exp(-a);
    ClosedFormResult out;
    out.bits = rs.bits;
    out.value = HpReal(-1) - sum.re;
    out.imag_residue = to_d(sum.im);
    return out;
}

ClosedFormResult l1_closed_form(int m, unsigned bits) { return l1_closed_form(find_roots(m, bits)); }

double approx_l1(int m) {
    if (m < 1) throw InvalidArgument("approx_l1 needs m >= 1");
    return m + 1.0 - 1.0 / (m + 2.0);
}

std::vector<Rational> inverse_power_sums_exact(int m, int t_max) {
    if (m < 1) throw InvalidArgument("inverse_power_sums_exact needs m >= 1");
    // Reciprocals of the zeros are the zeros of x^m + sum_k x^{m-k}/k!.
    std::vector<Rational> a(static_cast<std::size_t>(m) + 1);
    for (int k = 1; k <= m; ++k) a[k] = Rational(BigInt(1), factorial(static_cast<unsigned>(k)));
    std::vector<Rational> p(static_cast<std::size_t>(t_max) + 1);
    for (int t = 1; t <= t_max; ++t) {
        Rational acc = 0;
        for (int i = 1; i <= std::min(t - 1, m); ++i) acc += a[i] * p[t - i];
        if (t <= m) acc += Rational(t) * a[t];
        p[t] = -acc;
    }
    return {p.begin() + 1, p.end()};
}

PowerSumReport power_sum_check(const RootSet& rs) {
    const int m = rs.m;
    PrecisionScope scope(working_bits(m, rs.bits));
    const Rational inv_mf(BigInt(1), factorial(static_cast<unsigned>(m)));
    const std::vector<Rational> newton = inverse_power_sums_exact(m, m + 2);

    PowerSumReport rep;
    rep.m = m;
    std::vector<HpComplex> inv;
    for (const auto& a : rs.roots) inv.push_back(inverse(a));
    std::vector<HpComplex> powers = inv;
    for (int t = 1; t <= m + 2; ++t) {
        HpComplex sum;
        for (const auto& z : powers) sum += z;
        PowerSumRow row;
        row.t = t;
        row.real = sum.re;
        row.imag = sum.im;
        if (t == 1)
            row.expected = -1;
        else if (t <= m)
            row.expected = 0;
        else if (t == m + 1)
            row.expected = inv_mf;
        else
            row.expected = -inv_mf;
        row.newton = newton[t - 1];
        HpReal dev = abs(HpComplex(sum.re - HpReal(row.expected), sum.im));
        HpReal ndev = abs(HpComplex(sum.re - HpReal(row.newton), sum.im));
        row.deviation = to_d(dev);
        rep.max_deviation = std::max(rep.max_deviation, row.deviation);
        rep.max_newton_deviation = std::max(rep.max_newton_deviation, to_d(ndev));
        rep.rows.push_back(std::move(row));
        for (std::size_t i = 0; i < powers.size(); ++i) powers[i] *= inv[i];
    }
    return rep;
}

double ReciprocalSeries::envelope(int k) const { return 0.5 * std::pow(2.0 / (m + 2.0), k); }

bool ReciprocalSeries::within_envelope() const {
    for (std::size_t k = 1; k < exact.size(); ++k) {
        if (to_double(abs(exact[k])) > envelope(static_cast<int>(k))) return false;
    }
    return true;
}

ReciprocalSeries reciprocal_series(int m, int K, unsigned bits) {
    if (m < 0) throw InvalidArgument("reciprocal_series needs m >= 0");
    if (K < 2) throw InvalidArgument("reciprocal_series needs K >= 2");
    const auto um = static_cast<unsigned>(m);
    const BigInt top = factorial(um + 1);
    // a_k = (m+1)!/(m+1+k)!, a_0 = 1
    std::vector<Rational> a(static_cast<std::size_t>(K) + 1);
    a[0] = 1;
    for (int k = 1; k <= K; ++k) a[k] = Rational(top, factorial(um + 1 + static_cast<unsigned>(k)));

    ReciprocalSeries out;
    out.m = m;
    out.exact.assign(static_cast<std::size_t>(K) + 1, Rational(0));
    out.exact[0] = 1;
    for (int k = 1; k <= K; ++k) {
        Rational acc = 0;
        for (int j = 1; j <= k; ++j) acc += a[j] * out.exact[k - j];
        out.exact[k] = -acc;
    }
    PrecisionScope scope(bits);
    for (const auto& c : out.exact) out.coefficients.emplace_back(c);
    return out;
}

PartitionReport root_partition_diagnostic(const RootSet& rs, double gamma_minus, double gamma,
                                          double gamma_plus) {
    const double ceiling = 1.0 - std::log(2.0);
    if (!(0 < gamma_minus && gamma_minus < gamma && gamma < gamma_plus && gamma_plus < ceiling))
        throw InvalidArgument("need 0 < gamma- < gamma < gamma+ < 1 - log 2");
    PrecisionScope scope(working_bits(rs.m, rs.bits));
    PartitionReport rep;
    rep.m = rs.m;
    rep.gamma_minus = gamma_minus;
    rep.gamma = gamma;
    rep.gamma_plus = gamma_plus;
    const double m = rs.m;
    const double lower_l = m * std::exp(gamma_minus - 1.0);
    const double upper_s = m * std::exp(gamma_plus - 1.0);
    HpComplex large_sum;
    for (std::size_t i = 0; i < rs.roots.size(); ++i) {
        const auto& a = rs.roots[i];
        const double mag = to_d(abs(a));
        if (to_d(a.re) <= gamma * m) {
            rep.small.push_back(static_cast<int>(i));
            rep.small_magnitude_ok = rep.small_magnitude_ok && mag <= upper_s;
            rep.small_half_ok = rep.small_half_ok && mag < m / 2.0;
        } else {
            rep.large.push_back(static_cast<int>(i));
            rep.large_magnitude_ok = rep.large_magnitude_ok && mag >= lower_l;
            large_sum += inverse(a) * exp(-a);
        }
    }
    rep.large_sum_abs = to_d(abs(large_sum));
    rep.large_sum_bound = std::exp(-gamma * m) / gamma;
    rep.large_sum_ok = rep.large_sum_abs <= rep.large_sum_bound;
    return rep;
}

}  // namespace cis
