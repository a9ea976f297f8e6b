#include "cis/numeric.hpp"

#include "cis/errors.hpp"

#include <cmath>

namespace cis {

unsigned bits_to_digits10(unsigned bits) {
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

PrecisionScope::PrecisionScope(unsigned bits)
    : saved_digits10_(HpReal::default_precision()) {
    HpReal::default_precision(bits_to_digits10(bits));
}

PrecisionScope::~PrecisionScope() { HpReal::default_precision(saved_digits10_); }

BigInt factorial(unsigned n) {
    BigInt out;
    mpz_fac_ui(out.backend().data(), n);
    return out;
}

BigInt binomial(unsigned n, unsigned k) {
    BigInt out;
    if (k > n) return out;
    mpz_bin_uiui(out.backend().data(), n, k);
    return out;
}

std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

Rational parse_rational(const std::string& text) {
    try {
        auto slash = text.find('/');
        if (slash == std::string::npos) return Rational(BigInt(text));
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) throw InvalidArgument("zero denominator in '" + text + "'");
        return Rational(num, den);
    } catch (const std::runtime_error& e) {
        if (dynamic_cast<const InvalidArgument*>(&e)) throw;
        throw InvalidArgument("not a rational: '" + text + "'");
    }
}

double to_double(const Rational& r) { return mpq_get_d(r.backend().data()); }

}  // namespace cis
