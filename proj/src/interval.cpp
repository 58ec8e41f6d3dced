#include "habcert/interval.hpp"

#include <cmath>
#include <cstdio>
#include <memory>

#include "habcert/error.hpp"

namespace habcert {

namespace {

struct MpfrTemp {
  mpfr_t v;
  MpfrTemp() { mpfr_init2(v, kIntervalPrecision); }
  ~MpfrTemp() { mpfr_clear(v); }
  MpfrTemp(const MpfrTemp&) = delete;
  MpfrTemp& operator=(const MpfrTemp&) = delete;
};

Rational mpfr_to_rational(const __mpfr_struct* x) {
  if (!mpfr_number_p(x)) throw Error(ErrorKind::Domain, "non-finite interval endpoint");
  if (mpfr_zero_p(x)) return Rational(0);
  BigInt m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
  Rational r(m);
  if (e > 0) mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  else if (e < 0) mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  r.canonicalize();
  return r;
}

std::string format(const __mpfr_struct* x, int digits, mpfr_rnd_t rnd) {
  char* buf = nullptr;
  const char* fmt = rnd == MPFR_RNDD ? "%.*RDe" : (rnd == MPFR_RNDU ? "%.*RUe" : "%.*RNe");
  if (mpfr_asprintf(&buf, fmt, digits - 1, x) < 0) throw Error(ErrorKind::Io, "mpfr formatting failed");
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

}  // namespace

Interval::Interval() {
  mpfr_init2(lo_, kIntervalPrecision);
  mpfr_init2(hi_, kIntervalPrecision);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Rational& point) : Interval(point, point) {}

Interval::Interval(const Rational& lo, const Rational& hi) : Interval() {
  if (lo > hi) throw Error(ErrorKind::InvalidArgument, "interval with lo > hi");
  mpfr_set_q(lo_, lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, hi.get_mpq_t(), MPFR_RNDU);
}

Interval Interval::from_long_double(long double value) {
  Interval r;
  mpfr_set_ld(r.lo_, value, MPFR_RNDD);
  mpfr_set_ld(r.hi_, value, MPFR_RNDU);
  return r;
}

Interval Interval::from_bounds(long double lo, long double hi) {
  if (!(lo <= hi)) throw Error(ErrorKind::InvalidArgument, "interval with lo > hi");
  Interval r;
  mpfr_set_ld(r.lo_, lo, MPFR_RNDD);
  mpfr_set_ld(r.hi_, hi, MPFR_RNDU);
  return r;
}

Interval Interval::around(long double mid, long double radius) {
  if (!(radius >= 0) || !std::isfinite(mid)) throw Error(ErrorKind::InvalidArgument, "bad midpoint/radius");
  return from_long_double(mid).inflate(radius);
}

Interval Interval::from_decimal(const std::string& lo, const std::string& hi) {
  Interval r;
  if (mpfr_set_str(r.lo_, lo.c_str(), 10, MPFR_RNDD) != 0 || mpfr_set_str(r.hi_, hi.c_str(), 10, MPFR_RNDU) != 0)
    throw Error(ErrorKind::Parse, "bad decimal interval [" + lo + ", " + hi + "]");
  if (mpfr_greater_p(r.lo_, r.hi_)) throw Error(ErrorKind::Parse, "decimal interval with lo > hi");
  return r;
}

Interval::Interval(const Interval& o) {
  mpfr_init2(lo_, kIntervalPrecision);
  mpfr_init2(hi_, kIntervalPrecision);
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& o) noexcept : Interval() { mpfr_swap(lo_, o.lo_), mpfr_swap(hi_, o.hi_); }

Interval& Interval::operator=(const Interval& o) {
  if (this != &o) {
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  return *this;
}

Interval& Interval::operator=(Interval&& o) noexcept {
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

long double Interval::lower() const { return mpfr_get_ld(lo_, MPFR_RNDD); }
long double Interval::upper() const { return mpfr_get_ld(hi_, MPFR_RNDU); }

long double Interval::mid() const {
  MpfrTemp m;
  mpfr_add(m.v, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m.v, m.v, 1, MPFR_RNDN);
  return mpfr_get_ld(m.v, MPFR_RNDN);
}

long double Interval::width() const {
  MpfrTemp w;
  mpfr_sub(w.v, hi_, lo_, MPFR_RNDU);
  return mpfr_get_ld(w.v, MPFR_RNDU);
}

Rational Interval::lower_rational() const { return mpfr_to_rational(lo_); }
Rational Interval::upper_rational() const { return mpfr_to_rational(hi_); }

bool Interval::contains(const Rational& x) const {
  return mpfr_cmp_q(lo_, x.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, x.get_mpq_t()) >= 0;
}

bool Interval::contains(long double x) const { return mpfr_cmp_ld(lo_, x) <= 0 && mpfr_cmp_ld(hi_, x) >= 0; }

bool Interval::contains(const Interval& o) const {
  return mpfr_lessequal_p(lo_, o.lo_) && mpfr_greaterequal_p(hi_, o.hi_);
}

bool Interval::is_point() const { return mpfr_equal_p(lo_, hi_); }
bool Interval::positive() const { return mpfr_sgn(lo_) > 0; }
bool Interval::negative() const { return mpfr_sgn(hi_) < 0; }

Interval Interval::operator-() const {
  Interval r;
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval r;
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r;
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  Interval r;
  MpfrTemp t;
  const __mpfr_struct* xs[2] = {a.lo_, a.hi_};
  const __mpfr_struct* ys[2] = {b.lo_, b.hi_};
  bool first = true;
  for (auto* x : xs)
    for (auto* y : ys) {
      mpfr_mul(t.v, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t.v, r.lo_)) mpfr_set(r.lo_, t.v, MPFR_RNDD);
      mpfr_mul(t.v, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t.v, r.hi_)) mpfr_set(r.hi_, t.v, MPFR_RNDU);
      first = false;
    }
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (mpfr_sgn(b.lo_) <= 0 && mpfr_sgn(b.hi_) >= 0) throw Error(ErrorKind::Domain, "interval division by an interval containing 0");
  Interval r;
  MpfrTemp t;
  const __mpfr_struct* xs[2] = {a.lo_, a.hi_};
  const __mpfr_struct* ys[2] = {b.lo_, b.hi_};
  bool first = true;
  for (auto* x : xs)
    for (auto* y : ys) {
      mpfr_div(t.v, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t.v, r.lo_)) mpfr_set(r.lo_, t.v, MPFR_RNDD);
      mpfr_div(t.v, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t.v, r.hi_)) mpfr_set(r.hi_, t.v, MPFR_RNDU);
      first = false;
    }
  return r;
}

Interval Interval::pow(unsigned k) const {
  Interval result(Rational(1));
  for (unsigned i = 0; i < k; ++i) result = result * *this;
  // Even powers of an interval straddling zero are nonnegative.
  if (k % 2 == 0 && k > 0 && mpfr_sgn(result.lo_) < 0) mpfr_set_zero(result.lo_, 1);
  return result;
}

Interval Interval::sqrt() const {
  if (mpfr_sgn(lo_) < 0) throw Error(ErrorKind::Domain, "sqrt of an interval with negative part");
  Interval r;
  mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::atan() const {
  Interval r;
  mpfr_atan(r.lo_, lo_, MPFR_RNDD);
  mpfr_atan(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::log() const {
  if (mpfr_sgn(lo_) <= 0) throw Error(ErrorKind::Domain, "log of an interval with nonpositive part");
  Interval r;
  mpfr_log(r.lo_, lo_, MPFR_RNDD);
  mpfr_log(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::log1p() const {
  if (mpfr_cmp_si(lo_, -1) <= 0) throw Error(ErrorKind::Domain, "log1p of an interval reaching -1");
  Interval r;
  mpfr_log1p(r.lo_, lo_, MPFR_RNDD);
  mpfr_log1p(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::hull(const Interval& o) const {
  Interval r;
  mpfr_min(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, hi_, o.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::inflate(long double rad) const {
  if (!(rad >= 0)) throw Error(ErrorKind::InvalidArgument, "negative inflation radius");
  Interval r;
  MpfrTemp t;
  mpfr_set_ld(t.v, rad, MPFR_RNDU);
  mpfr_sub(r.lo_, lo_, t.v, MPFR_RNDD);
  mpfr_add(r.hi_, hi_, t.v, MPFR_RNDU);
  return r;
}

std::string Interval::lower_string(int digits) const { return format(lo_, digits, MPFR_RNDD); }
std::string Interval::upper_string(int digits) const { return format(hi_, digits, MPFR_RNDU); }

std::string Interval::to_string(int digits) const {
  return "[" + lower_string(digits) + ", " + upper_string(digits) + "]";
}

}  // namespace habcert
