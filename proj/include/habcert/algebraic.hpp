#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <variant>

#include "habcert/interval.hpp"
#include "habcert/polynomial.hpp"
#include "habcert/roots.hpp"

namespace habcert {

inline constexpr double kDefaultEnclosureWidth = 1e-17;

/// A real root of a rational polynomial, isolated by a rational bracket.
/// Copies share one refinement cache; refinement is serialized by a mutex and
/// readers always get a valid enclosure.
class AlgebraicConstant {
 public:
  /// Throws Error(Domain) unless the polynomial has exactly one real root in
  /// the closed bracket [lo, hi].
  AlgebraicConstant(const RationalPolynomial& defining, const Rational& lo, const Rational& hi);

  const RationalPolynomial& defining_polynomial() const { return defining_; }
  const Rational& bracket_lo() const { return bracket_lo_; }
  const Rational& bracket_hi() const { return bracket_hi_; }
  /// Set when the root turned out to be rational.
  const std::optional<Rational>& exact_value() const { return exact_; }

  /// Width <= `width`, contains the root; nested across calls.
  Interval enclose(double width = kDefaultEnclosureWidth) const;
  /// Current rational bracket after refinement to `width`.
  std::pair<Rational, Rational> bracket(const Rational& width) const;
  long double approx() const;

  /// Sign of (root - x), decided exactly.
  int compare(const Rational& x) const;

  /// Root of p(t^2) in the positive half-line above this (positive) root.
  AlgebraicConstant sqrt() const;

  /// Two handles name the same real number.
  bool same_value(const AlgebraicConstant& other) const;

 private:
  struct Cache {
    std::mutex mutex;
    RootEnclosure root;
  };
  RationalPolynomial defining_;
  Rational bracket_lo_, bracket_hi_;
  std::optional<Rational> exact_;
  std::shared_ptr<Cache> cache_;
};

AlgebraicConstant make_constant(const RationalPolynomial& defining, const Rational& lo, const Rational& hi);

/// c^k for k >= 1; a Rational when the power is rational, otherwise a new
/// constant. Supported for rational constants and for positive roots of
/// binomials a·t^m - b; throws Error(NotApplicable) otherwise.
std::variant<Rational, AlgebraicConstant> exact_power(const AlgebraicConstant& c, unsigned k);

/// (3/5)^(1/4): root of 5t^4 - 3 in [0, 1].
const AlgebraicConstant& knot_x0();
/// (3/5)^(1/8): root of 5t^8 - 3 in [0, 1].
const AlgebraicConstant& knot_x1();

struct PiEnclosure {
  Interval enclosure;
  Rational lo, hi;
  int terms = 0;
};

/// Machin's formula with exact alternating-series remainders; width >= 1e-30.
PiEnclosure pi_enclosure(double width);
/// Cached enclosure far below double precision, for interval pipelines.
const Interval& pi_interval();

Rational rational_from_double(double v);

}  // namespace habcert
