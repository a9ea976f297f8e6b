#pragma once

#include "cis/numeric.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace cis {

/// Dense univariate polynomial with exact rational coefficients, indexed by
/// degree. The coefficient vector never has a trailing zero; the zero
/// polynomial has no coefficients.
class RationalPolynomial {
public:
    RationalPolynomial() = default;
    explicit RationalPolynomial(std::vector<Rational> coefficients);

    static RationalPolynomial monomial(unsigned degree, Rational coefficient = 1);

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Rational>& coefficients() const { return coeffs_; }
    /// Coefficient of x^k (zero past the degree).
    Rational operator[](std::size_t k) const;

    Rational evaluate(const Rational& x) const;

    RationalPolynomial& operator+=(const RationalPolynomial& rhs);
    RationalPolynomial& operator*=(const Rational& s);
    friend RationalPolynomial operator+(RationalPolynomial a, const RationalPolynomial& b) {
        return a += b;
    }
    friend RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b);
    friend bool operator==(const RationalPolynomial&, const RationalPolynomial&) = default;

    std::string to_string() const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

RationalPolynomial pow(const RationalPolynomial& p, unsigned exponent);

/// (i_1, ..., i_m) with non-negative parts summing to n.
struct WeakComposition {
    std::vector<unsigned> parts;

    unsigned total() const;
    /// l = sum_j j * i_j (1-based j).
    unsigned weighted_total() const;
};

/// Visits all C(n+m-1, m-1) weak compositions of n into m parts, in reverse
/// lexicographic order (first part largest first).
void for_each_weak_composition(unsigned n, unsigned m,
                               const std::function<void(const WeakComposition&)>& visit);
std::vector<WeakComposition> weak_compositions(unsigned n, unsigned m);

/// h_m(n): number of words in S_{m,n} containing 12...n, from the
/// weak-composition formula of Horton and Kurn.
BigInt horton_kurn_h(int m, int n);

enum class CompletionEngine { HortonKurn, GeneratingFunction, BruteForce };

CompletionEngine parse_engine(const std::string& name);
std::string engine_name(CompletionEngine e);

/// Pr[L^1_{m,n} = n] = h_m(n) / |S_{m,n}|, exact.
Rational complete_prob(int m, int n, CompletionEngine engine = CompletionEngine::HortonKurn);

/// q_{m,1}(x) = -m! * sum_{j=1}^m x^j / (m-j)!.
RationalPolynomial q_poly(int m);

/// q_{m,n}(x) summed term by term over weak compositions (no power trick).
RationalPolynomial q_poly_by_compositions(int m, int n);

/// x^l -> x^l / l!.
RationalPolynomial phi_apply(const RationalPolynomial& p);
/// x^l -> l! x^l.
RationalPolynomial phi_inverse(const RationalPolynomial& p);

/// p_{m,n}(-1) = Phi(q_{m,1}^n) evaluated at -1.
Rational p_value(int m, int n);

/// Successive values p_{m,1}(-1), p_{m,2}(-1), ... computed by updating
/// q_{m,1}^n in place (integer coefficients), without rebuilding the power.
class CompletionSequence {
public:
    explicit CompletionSequence(int m);
    /// Returns the probability for the next n (starting at n = 1).
    Rational next();
    int n() const { return n_; }

private:
    int m_;
    int n_ = 0;
    std::vector<BigInt> q1_;
    std::vector<BigInt> power_;
};

struct SeriesResult {
    HpReal value;
    Rational partial_sum;
    int terms_used = 0;
    /// The last summed term; the series tail is not bounded analytically.
    double truncation_bound = 0.0;
};

/// Partial sums of sum_{n>=1} Pr[L^1_{m,n} = n] (the limit of E[L^1_{m,n}]).
/// Stops at the first n >= 3m+3 whose term is below eps after three
/// non-increasing terms. Throws NoConvergence if max_n is reached first.
SeriesResult l1_series(int m, double eps, int max_n = 2000, unsigned bits = 128,
                       CompletionEngine engine = CompletionEngine::GeneratingFunction);

/// sum_{k=1}^{n} Pr[L^1_{m,k} = k] = E[L^1_{m,n}] exactly, for finite n.
Rational expected_l1_exact(int m, int n);

}  // namespace cis
