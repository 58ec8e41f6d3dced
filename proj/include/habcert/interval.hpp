#pragma once

#include <mpfr.h>

#include <string>

#include "habcert/rational.hpp"

namespace habcert {

inline constexpr mpfr_prec_t kIntervalPrecision = 192;

/// Closed interval [lo, hi] with MPFR endpoints. Every operation rounds the
/// lower endpoint down and the upper endpoint up, so the exact result of the
/// real operation on any members lies in the result.
class Interval {
 public:
  Interval();
  explicit Interval(const Rational& point);
  Interval(const Rational& lo, const Rational& hi);
  static Interval from_long_double(long double value);
  static Interval from_bounds(long double lo, long double hi);
  static Interval around(long double mid, long double radius);
  /// The decimal literal is parsed outward (lo down, hi up).
  static Interval from_decimal(const std::string& lo, const std::string& hi);

  Interval(const Interval& o);
  Interval(Interval&& o) noexcept;
  Interval& operator=(const Interval& o);
  Interval& operator=(Interval&& o) noexcept;
  ~Interval();

  long double lower() const;
  long double upper() const;
  long double mid() const;
  long double width() const;  // rounded up
  Rational lower_rational() const;  // exact (dyadic)
  Rational upper_rational() const;

  bool contains(const Rational& x) const;
  bool contains(long double x) const;
  bool contains(const Interval& o) const;
  bool is_point() const;
  bool positive() const;  // lo > 0
  bool negative() const;  // hi < 0

  Interval operator-() const;
  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);  // b must exclude 0
  Interval& operator+=(const Interval& o) { return *this = *this + o; }
  Interval& operator-=(const Interval& o) { return *this = *this - o; }
  Interval& operator*=(const Interval& o) { return *this = *this * o; }

  Interval pow(unsigned k) const;
  Interval sqrt() const;  // requires lo >= 0
  Interval atan() const;
  Interval log() const;  // requires lo > 0
  Interval log1p() const;
  /// Convex hull.
  Interval hull(const Interval& o) const;
  /// Widen both ends by r (r >= 0), rounding outward.
  Interval inflate(long double r) const;

  /// Outward-rounded scientific decimals.
  std::string lower_string(int digits = 40) const;
  std::string upper_string(int digits = 40) const;
  std::string to_string(int digits = 20) const;

  const __mpfr_struct* lo_ptr() const { return lo_; }
  const __mpfr_struct* hi_ptr() const { return hi_; }
  __mpfr_struct* lo_ptr() { return lo_; }
  __mpfr_struct* hi_ptr() { return hi_; }

 private:
  mpfr_t lo_;
  mpfr_t hi_;
};


}  // namespace habcert
