#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <string>

namespace cis {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
/// Runtime-precision binary float; precision follows PrecisionScope.
using HpReal = boost::multiprecision::mpfr_float;

/// Sets the default mpfr precision for the current thread and restores the
/// previous value on destruction.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned bits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_digits10_;
};

unsigned bits_to_digits10(unsigned bits);

BigInt factorial(unsigned n);
BigInt binomial(unsigned n, unsigned k);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);
/// Parses "p/q" or "p".
Rational parse_rational(const std::string& text);

double to_double(const Rational& r);

}  // namespace cis
