#pragma once

#include <mpfr.h>

#include "habcert/interval.hpp"
#include "habcert/quadrature.hpp"
#include "habcert/rational.hpp"

namespace habcert {

enum class PrecisionMode { Standard, Extended };

const char* to_string(PrecisionMode m);

template <class Real>
Real to_real(const Rational& r);

template <>
inline long double to_real<long double>(const Rational& r) {
  return to_long_double(r);
}

template <>
inline ExtendedReal to_real<ExtendedReal>(const Rational& r) {
  ExtendedReal out;
  mpfr_set_q(out.backend().data(), r.get_mpq_t(), MPFR_RNDN);
  return out;
}

template <class Real>
Real midpoint_real(const Interval& i);

template <>
inline long double midpoint_real<long double>(const Interval& i) {
  return i.mid();
}

template <>
inline ExtendedReal midpoint_real<ExtendedReal>(const Interval& i) {
  ExtendedReal out;
  mpfr_add(out.backend().data(), i.lo_ptr(), i.hi_ptr(), MPFR_RNDN);
  mpfr_div_2ui(out.backend().data(), out.backend().data(), 1, MPFR_RNDN);
  return out;
}

/// [mid - radius, mid + radius] rounded outward.
inline Interval ball(long double mid, long double radius) { return Interval::around(mid, radius); }

inline Interval ball(const ExtendedReal& mid, const ExtendedReal& radius) {
  Interval out;
  mpfr_sub(out.lo_ptr(), mid.backend().data(), radius.backend().data(), MPFR_RNDD);
  mpfr_add(out.hi_ptr(), mid.backend().data(), radius.backend().data(), MPFR_RNDU);
  return out;
}

inline long double to_ld(long double v) { return v; }
inline long double to_ld(const ExtendedReal& v) { return v.convert_to<long double>(); }

template <class Real>
Real int_pow(Real x, unsigned k) {
  Real r = 1;
  while (k) {
    if (k & 1u) r *= x;
    k >>= 1u;
    if (k) x *= x;
  }
  return r;
}

}  // namespace habcert
