#pragma once

#include "cis/exact.hpp"
#include "cis/numeric.hpp"

#include <vector>

namespace cis {

/// Complex number over HpReal. std::complex is unspecified for non-builtin
/// element types, so the handful of operations needed live here.
struct HpComplex {
    HpReal re;
    HpReal im;

    HpComplex() : re(0), im(0) {}
    HpComplex(HpReal r, HpReal i = HpReal(0)) : re(std::move(r)), im(std::move(i)) {}

    HpComplex& operator+=(const HpComplex& o);
    HpComplex& operator-=(const HpComplex& o);
    HpComplex& operator*=(const HpComplex& o);
    HpComplex& operator/=(const HpComplex& o);
    friend HpComplex operator+(HpComplex a, const HpComplex& b) { return a += b; }
    friend HpComplex operator-(HpComplex a, const HpComplex& b) { return a -= b; }
    friend HpComplex operator*(HpComplex a, const HpComplex& b) { return a *= b; }
    friend HpComplex operator/(HpComplex a, const HpComplex& b) { return a /= b; }
    HpComplex operator-() const { return {-re, -im}; }
};

HpReal abs(const HpComplex& z);
HpComplex exp(const HpComplex& z);
HpComplex inverse(const HpComplex& z);
HpComplex pow(const HpComplex& z, int exponent);
HpComplex conj(const HpComplex& z);

/// E_m(x) = sum_{k=0}^m x^k / k!, exact.
RationalPolynomial truncated_exp(int m);

/// Zeros of E_m with their residuals. Roots are stored at the working
/// precision (`bits` plus guard bits); use PrecisionScope(bits) or higher
/// when doing arithmetic with them.
struct RootSet {
    int m = 0;
    unsigned bits = 0;
    std::vector<HpComplex> roots;
    /// |E_m(alpha_i)|
    std::vector<HpReal> residuals;
    int iterations = 0;

    double max_residual() const;
    double min_pairwise_distance() const;
    /// Largest distance from a root's conjugate to the nearest root.
    double conjugate_mismatch() const;
};

/// Aberth-Ehrlich iteration from m points on the circle |z| = m/2, then a
/// Newton polish per root. Throws NoConvergence if the iteration cap is hit
/// or the certification checks fail.
RootSet find_roots(int m, unsigned bits = 128);

/// Residual threshold used for certification: 10^(-bits/4).
double certification_tolerance(unsigned bits);

struct ClosedFormResult {
    HpReal value;
    /// Imaginary part of the sum; nonzero only through rounding.
    double imag_residue = 0.0;
    unsigned bits = 0;
};

/// -1 - sum_i alpha_i^{-1} e^{-alpha_i}, the n -> infinity limit of E[L^1_{m,n}].
ClosedFormResult l1_closed_form(int m, unsigned bits = 128);
ClosedFormResult l1_closed_form(const RootSet& roots);

/// m + 1 - 1/(m+2).
double approx_l1(int m);

struct PowerSumRow {
    int t = 0;
    HpReal real;
    HpReal imag;
    Rational expected;
    /// sum of alpha^{-t} from Newton's identities on the exact coefficients.
    Rational newton;
    double deviation = 0.0;
};

struct PowerSumReport {
    int m = 0;
    std::vector<PowerSumRow> rows;
    /// max over t of |computed - table value|.
    double max_deviation = 0.0;
    /// max over t of |computed - Newton identity value|.
    double max_newton_deviation = 0.0;
};

/// sum_i alpha_i^{-t} for t = 1..m+2, compared with -1, 0, 1/m!, -1/m! and
/// with the exact Newton-identity values.
PowerSumReport power_sum_check(const RootSet& roots);

/// Exact power sums of the reciprocals of the zeros of E_m, t = 1..t_max,
/// from Newton's identities (no root finding).
std::vector<Rational> inverse_power_sums_exact(int m, int t_max);

struct ReciprocalSeries {
    int m = 0;
    /// c_0..c_K of x^{m+1} / ((m+1)! R_m(x)), exact.
    std::vector<Rational> exact;
    std::vector<HpReal> coefficients;

    /// (1/2) (2/(m+2))^k
    double envelope(int k) const;
    bool within_envelope() const;
};

ReciprocalSeries reciprocal_series(int m, int K, unsigned bits = 128);

struct PartitionReport {
    int m = 0;
    double gamma_minus = 0, gamma = 0, gamma_plus = 0;
    std::vector<int> small;  // indices with Re <= gamma*m
    std::vector<int> large;  // indices with Re > gamma*m
    bool large_magnitude_ok = true;   // |alpha| >= m e^{gamma_minus - 1} on L
    bool small_magnitude_ok = true;   // |alpha| <= m e^{gamma_plus - 1} on S
    bool small_half_ok = true;        // |alpha| < m/2 on S
    double large_sum_abs = 0.0;       // |sum_{L} alpha^{-1} e^{-alpha}|
    double large_sum_bound = 0.0;     // gamma^{-1} e^{-gamma m}
    bool large_sum_ok = true;
    bool all_ok() const {
        return large_magnitude_ok && small_magnitude_ok && small_half_ok && large_sum_ok;
    }
};

inline constexpr double kDefaultGammaMinus = 0.15;
inline constexpr double kDefaultGamma = 0.22;
inline constexpr double kDefaultGammaPlus = 0.29;

/// Splits the zeros by real part against gamma*m and evaluates the
/// magnitude and tail-sum inequalities. Violations are reported, not thrown;
/// they are only guaranteed to vanish for large m.
PartitionReport root_partition_diagnostic(const RootSet& roots,
                                          double gamma_minus = kDefaultGammaMinus,
                                          double gamma = kDefaultGamma,
                                          double gamma_plus = kDefaultGammaPlus);

}  // namespace cis
