#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "habcert/rational.hpp"

namespace habcert {

/// Dense univariate polynomial over Q. coeffs()[k] multiplies x^k. Trailing
/// zero coefficients are stripped on construction, so the zero polynomial has
/// an empty coefficient vector and degree() == -1.
class RationalPolynomial {
 public:
  RationalPolynomial() = default;
  explicit RationalPolynomial(std::vector<Rational> coeffs);
  RationalPolynomial(std::initializer_list<Rational> coeffs);

  static RationalPolynomial constant(const Rational& c);
  static RationalPolynomial monomial(const Rational& c, unsigned k);
  /// a + b·x
  static RationalPolynomial affine(const Rational& a, const Rational& b);

  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  Rational coeff(unsigned k) const;
  Rational leading() const;

  Rational operator()(const Rational& x) const;
  long double eval(long double x) const;

  RationalPolynomial operator-() const;
  RationalPolynomial& operator+=(const RationalPolynomial& o);
  RationalPolynomial& operator-=(const RationalPolynomial& o);
  RationalPolynomial& operator*=(const RationalPolynomial& o);
  RationalPolynomial& operator*=(const Rational& c);

  friend RationalPolynomial operator+(RationalPolynomial a, const RationalPolynomial& b) { return a += b; }
  friend RationalPolynomial operator-(RationalPolynomial a, const RationalPolynomial& b) { return a -= b; }
  friend RationalPolynomial operator*(RationalPolynomial a, const RationalPolynomial& b) { return a *= b; }
  friend RationalPolynomial operator*(RationalPolynomial a, const Rational& c) { return a *= c; }
  friend RationalPolynomial operator*(const Rational& c, RationalPolynomial a) { return a *= c; }
  friend bool operator==(const RationalPolynomial& a, const RationalPolynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// p(inner(x)); inner must have degree <= 1.
  RationalPolynomial compose_affine(const RationalPolynomial& inner) const;
  /// p(x^k)
  RationalPolynomial substitute_power(unsigned k) const;
  RationalPolynomial pow(unsigned k) const;

  RationalPolynomial derivative() const;
  /// Antiderivative with zero constant term.
  RationalPolynomial antiderivative() const;
  Rational integrate(const Rational& a, const Rational& b) const;

  /// Multiplied so that all coefficients are coprime integers and the leading
  /// coefficient is positive.
  RationalPolynomial primitive() const;
  RationalPolynomial monic() const;

  std::string to_string(char var = 'x') const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

enum class PolyOp { Add, Sub, Mul, Scale, ComposeAffine };

/// Dispatching form of the arithmetic above; Scale multiplies a by the
/// constant term of b.
RationalPolynomial poly_arith(const RationalPolynomial& a, const RationalPolynomial& b, PolyOp op);

struct DivMod {
  RationalPolynomial quotient;
  RationalPolynomial remainder;
};
DivMod divmod(const RationalPolynomial& a, const RationalPolynomial& b);
RationalPolynomial gcd(RationalPolynomial a, RationalPolynomial b);

struct SquareFreeFactor {
  RationalPolynomial factor;  // monic, square-free
  unsigned multiplicity;
};
/// Yun's algorithm: p = lc · ∏ factor^multiplicity, factors pairwise coprime.
std::vector<SquareFreeFactor> square_free_decomposition(const RationalPolynomial& p);

}  // namespace habcert
