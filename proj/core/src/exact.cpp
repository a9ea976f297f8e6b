#include "cis/exact.hpp"

#include "cis/errors.hpp"
#include "cis/words.hpp"

#include <algorithm>
#include <sstream>

namespace cis {

RationalPolynomial::RationalPolynomial(std::vector<Rational> coefficients)
    : coeffs_(std::move(coefficients)) {
    trim();
}

RationalPolynomial RationalPolynomial::monomial(unsigned degree, Rational coefficient) {
    std::vector<Rational> c(degree + 1);
    c[degree] = std::move(coefficient);
    return RationalPolynomial(std::move(c));
}

void RationalPolynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational RationalPolynomial::operator[](std::size_t k) const {
    return k < coeffs_.size() ? coeffs_[k] : Rational(0);
}

Rational RationalPolynomial::evaluate(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

RationalPolynomial& RationalPolynomial::operator+=(const RationalPolynomial& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
    trim();
    return *this;
}

RationalPolynomial& RationalPolynomial::operator*=(const Rational& s) {
    for (auto& c : coeffs_) c *= s;
    trim();
    return *this;
}

RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return RationalPolynomial(std::move(out));
}

std::string RationalPolynomial::to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        const Rational& c = coeffs_[k];
        if (c == 0) continue;
        Rational mag = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        bool unit = (mag == 1);
        if (!unit || k == 0) os << cis::to_string(mag);
        if (k >= 1) os << (unit ? "" : "*") << "x";
        if (k >= 2) os << "^" << k;
    }
    return os.str();
}

RationalPolynomial pow(const RationalPolynomial& p, unsigned exponent) {
    RationalPolynomial out({Rational(1)});
    for (unsigned i = 0; i < exponent; ++i) out = out * p;
    return out;
}

unsigned WeakComposition::total() const {
    unsigned s = 0;
    for (unsigned p : parts) s += p;
    return s;
}

unsigned WeakComposition::weighted_total() const {
    unsigned s = 0;
    for (std::size_t j = 0; j < parts.size(); ++j) s += static_cast<unsigned>(j + 1) * parts[j];
    return s;
}

void for_each_weak_composition(unsigned n, unsigned m,
                               const std::function<void(const WeakComposition&)>& visit) {
    if (m == 0) throw InvalidArgument("weak compositions need m >= 1");
    WeakComposition c{std::vector<unsigned>(m, 0)};
    // Recursive fill: part j takes every value from the remainder down to 0;
    // the final part absorbs whatever is left.
    std::function<void(unsigned, unsigned)> fill = [&](unsigned j, unsigned remaining) {
        if (j + 1 == m) {
            c.parts[j] = remaining;
            visit(c);
            return;
        }
        for (unsigned v = remaining + 1; v-- > 0;) {
            c.parts[j] = v;
            fill(j + 1, remaining - v);
        }
    };
    fill(0, n);
}

std::vector<WeakComposition> weak_compositions(unsigned n, unsigned m) {
    std::vector<WeakComposition> out;
    for_each_weak_composition(n, m, [&](const WeakComposition& c) { out.push_back(c); });
    return out;
}

BigInt horton_kurn_h(int m, int n) {
    if (m < 1 || n < 1) throw InvalidArgument("horton_kurn_h needs m, n >= 1");
    const auto um = static_cast<unsigned>(m);
    const auto un = static_cast<unsigned>(n);
    const BigInt mn_fact = factorial(um * un);
    const BigInt n_fact = factorial(un);
    std::vector<BigInt> part_fact(un + 1);
    for (unsigned k = 0; k <= un; ++k) part_fact[k] = factorial(k);
    // (m-j)! for j = 1..m
    std::vector<BigInt> tail_fact(um + 1);
    for (unsigned j = 1; j <= um; ++j) tail_fact[j] = factorial(um - j);

    Rational total = 0;
    for_each_weak_composition(un, um, [&](const WeakComposition& c) {
        const unsigned l = c.weighted_total();
        BigInt multinomial = n_fact;
        BigInt denom = 1;
        for (unsigned j = 1; j <= um; ++j) {
            const unsigned i = c.parts[j - 1];
            multinomial /= part_fact[i];
            BigInt p;
            mpz_pow_ui(p.backend().data(), tail_fact[j].backend().data(), i);
            denom *= p;
        }
        BigInt num = multinomial * (mn_fact / factorial(l));
        if ((l - un) % 2 == 1) num = -num;
        total += Rational(num, denom);
    });
    if (denominator(total) != 1)
        throw InternalInconsistency("Horton-Kurn sum is not an integer: " + to_string(total));
    return numerator(total);
}

CompletionEngine parse_engine(const std::string& name) {
    if (name == "hk") return CompletionEngine::HortonKurn;
    if (name == "gf") return CompletionEngine::GeneratingFunction;
    if (name == "brute") return CompletionEngine::BruteForce;
    throw InvalidArgument("unknown engine '" + name + "' (expected hk, gf or brute)");
}

std::string engine_name(CompletionEngine e) {
    switch (e) {
        case CompletionEngine::HortonKurn: return "hk";
        case CompletionEngine::GeneratingFunction: return "gf";
        case CompletionEngine::BruteForce: return "brute";
    }
    return "?";
}

Rational complete_prob(int m, int n, CompletionEngine engine) {
    if (m < 1 || n < 1) throw InvalidArgument("complete_prob needs m, n >= 1");
    switch (engine) {
        case CompletionEngine::HortonKurn:
            return Rational(horton_kurn_h(m, n), multiset_count(m, n));
        case CompletionEngine::GeneratingFunction:
            return p_value(m, n);
        case CompletionEngine::BruteForce:
            return Rational(count_complete_bruteforce(m, n), multiset_count(m, n));
    }
    throw InvalidArgument("unknown engine");
}

RationalPolynomial q_poly(int m) {
    if (m < 1) throw InvalidArgument("q_poly needs m >= 1");
    const auto um = static_cast<unsigned>(m);
    const BigInt mf = factorial(um);
    std::vector<Rational> c(um + 1);
    for (unsigned j = 1; j <= um; ++j) c[j] = Rational(-(mf / factorial(um - j)));
    return RationalPolynomial(std::move(c));
}

RationalPolynomial q_poly_by_compositions(int m, int n) {
    if (m < 1 || n < 0) throw InvalidArgument("q_poly_by_compositions needs m >= 1, n >= 0");
    const auto um = static_cast<unsigned>(m);
    const auto un = static_cast<unsigned>(n);
    BigInt sign_scale = 1;
    const BigInt mf = factorial(um);
    for (unsigned i = 0; i < un; ++i) sign_scale *= -mf;
    std::vector<Rational> c(um * un + 1);
    for_each_weak_composition(un, um, [&](const WeakComposition& comp) {
        BigInt multinomial = factorial(un);
        BigInt denom = 1;
        for (unsigned j = 1; j <= um; ++j) {
            const unsigned i = comp.parts[j - 1];
            multinomial /= factorial(i);
            for (unsigned r = 0; r < i; ++r) denom *= factorial(um - j);
        }
        c[comp.weighted_total()] += Rational(sign_scale * multinomial, denom);
    });
    return RationalPolynomial(std::move(c));
}

RationalPolynomial phi_apply(const RationalPolynomial& p) {
    std::vector<Rational> c = p.coefficients();
    for (std::size_t l = 0; l < c.size(); ++l) c[l] /= Rational(factorial(static_cast<unsigned>(l)));
    return RationalPolynomial(std::move(c));
}

RationalPolynomial phi_inverse(const RationalPolynomial& p) {
    std::vector<Rational> c = p.coefficients();
    for (std::size_t l = 0; l < c.size(); ++l) c[l] *= Rational(factorial(static_cast<unsigned>(l)));
    return RationalPolynomial(std::move(c));
}

Rational p_value(int m, int n) {
    if (m < 1 || n < 1) throw InvalidArgument("p_value needs m, n >= 1");
    RationalPolynomial qn = pow(q_poly(m), static_cast<unsigned>(n));
    return phi_apply(qn).evaluate(Rational(-1));
}

CompletionSequence::CompletionSequence(int m) : m_(m) {
    if (m < 1) throw InvalidArgument("CompletionSequence needs m >= 1");
    const auto um = static_cast<unsigned>(m);
    const BigInt mf = factorial(um);
    q1_.assign(um + 1, BigInt(0));
    for (unsigned j = 1; j <= um; ++j) q1_[j] = -(mf / factorial(um - j));
    power_ = {BigInt(1)};
}

Rational CompletionSequence::next() {
    std::vector<BigInt> out(power_.size() + q1_.size() - 1);
    for (std::size_t i = 0; i < power_.size(); ++i) {
        if (power_[i] == 0) continue;
        for (std::size_t j = 1; j < q1_.size(); ++j) out[i + j] += power_[i] * q1_[j];
    }
    power_ = std::move(out);
    ++n_;
    // sum_l c_l (-1)^l / l!  =  (sum_l c_l (-1)^l L!/l!) / L!
    const std::size_t top = power_.size() - 1;
    BigInt weight = 1;  // L!/l!
    BigInt acc = 0;
    for (std::size_t l = top + 1; l-- > 0;) {
        if (power_[l] != 0) {
            if (l % 2 == 0)
                acc += power_[l] * weight;
            else
                acc -= power_[l] * weight;
        }
        weight *= static_cast<unsigned long>(l);
    }
    return Rational(acc, factorial(static_cast<unsigned>(top)));
}

SeriesResult l1_series(int m, double eps, int max_n, unsigned bits, CompletionEngine engine) {
    if (m < 1) throw InvalidArgument("l1_series needs m >= 1");
    if (!(eps > 0)) throw InvalidArgument("eps must be positive");
    CompletionSequence gf(m);
    SeriesResult res;
    Rational sum = 0;
    std::vector<Rational> terms;
    for (int n = 1; n <= max_n; ++n) {
        Rational term = engine == CompletionEngine::GeneratingFunction ? gf.next()
                                                                       : complete_prob(m, n, engine);
        sum += term;
        terms.push_back(term);
        const double t = to_double(term);
        const std::size_t k = terms.size();
        const bool decreasing = k >= 3 && terms[k - 3] >= terms[k - 2] && terms[k - 2] >= terms[k - 1];
        if (n >= 3 * m + 3 && t < eps && decreasing) {
            PrecisionScope scope(bits);
            res.partial_sum = sum;
            res.value = HpReal(sum);
            res.terms_used = n;
            res.truncation_bound = t;
            return res;
        }
    }
    throw NoConvergence("l1_series(m=" + std::to_string(m) + ") did not reach eps within " +
                        std::to_string(max_n) + " terms");
}

Rational expected_l1_exact(int m, int n) {
    CompletionSequence gf(m);
    Rational sum = 0;
    for (int k = 1; k <= n; ++k) sum += gf.next();
    return sum;
}

}  // namespace cis
