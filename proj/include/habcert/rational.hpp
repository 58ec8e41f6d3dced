#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace habcert {

// Exact rational in lowest terms with positive denominator. mpq_class results
// of arithmetic are canonical; anything built from raw parts goes through
// make_rational().
using Rational = mpq_class;
using BigInt = mpz_class;

Rational make_rational(const BigInt& num, const BigInt& den);

// "p/q" or "p" (when q == 1), decimal digits, optional leading minus.
std::string to_string(const Rational& r);

// Accepts exactly -?[0-9]+(/[0-9]+)?; throws Error(Parse) otherwise.
Rational parse_rational(std::string_view text);

int sign(const Rational& r);

Rational pow(const Rational& base, unsigned exponent);

long double to_long_double(const Rational& r);

}  // namespace habcert
