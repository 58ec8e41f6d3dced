#include "habcert/rational.hpp"

#include <mpfr.h>

#include "habcert/error.hpp"

namespace habcert {

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw Error(ErrorKind::Domain, "rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(10); }

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den))
    throw Error(ErrorKind::Parse, "not a rational literal: '" + std::string(text) + "'");
  BigInt n(std::string(num), 10);
  BigInt d(std::string(den), 10);
  if (d == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
  if (negative) n = -n;
  return make_rational(n, d);
}

int sign(const Rational& r) { return sgn(r); }

Rational pow(const Rational& base, unsigned exponent) {
  BigInt n, d;
  mpz_pow_ui(n.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(d.get_mpz_t(), base.get_den_mpz_t(), exponent);
  return make_rational(n, d);
}

long double to_long_double(const Rational& r) {
  mpfr_t tmp;
  mpfr_init2(tmp, 128);
  mpfr_set_q(tmp, r.get_mpq_t(), MPFR_RNDN);
  long double v = mpfr_get_ld(tmp, MPFR_RNDN);
  mpfr_clear(tmp);
  return v;
}

}  // namespace habcert
