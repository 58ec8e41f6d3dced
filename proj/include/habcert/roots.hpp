#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "habcert/interval.hpp"
#include "habcert/polynomial.hpp"

namespace habcert {

/// A real root bracketed either exactly ([r, r]) or by an open rational
/// interval (lo, hi) containing exactly one root of `factor` and no root of
/// any other square-free factor of the polynomial it came from.
struct RootEnclosure {
  Rational lo;
  Rational hi;
  unsigned multiplicity = 1;
  bool exact = false;
  RationalPolynomial factor;

  Interval interval() const;
  Rational width() const { return hi - lo; }
  /// Bisect until width <= max_width (exact roots are left alone).
  void refine(const Rational& max_width);
};

/// Sturm chain of a square-free polynomial; counts distinct roots in (a, b].
class SturmChain {
 public:
  explicit SturmChain(const RationalPolynomial& p);
  int variations(const Rational& x) const;
  int count(const Rational& a, const Rational& b) const { return variations(a) - variations(b); }
  const RationalPolynomial& base() const { return chain_.front(); }

 private:
  std::vector<RationalPolynomial> chain_;
};

/// Distinct real roots of p in the closed interval [a, b], sorted, pairwise
/// disjoint, with multiplicities. Throws Error(Domain) for the zero
/// polynomial and Error(InvalidArgument) unless a < b.
std::vector<RootEnclosure> isolate_roots(const RationalPolynomial& p, const Rational& a, const Rational& b);

enum class SignVerdict { Nonnegative, Nonpositive, Indefinite };
const char* to_string(SignVerdict v);

struct SignSample {
  Rational point;
  Rational value;
};

struct SignCertificate {
  RationalPolynomial polynomial;
  Rational domain_lo;
  Rational domain_hi;
  SignVerdict verdict = SignVerdict::Indefinite;
  bool zero_polynomial = false;
  std::vector<RootEnclosure> roots;
  Rational value_at_lo;
  Rational value_at_hi;
  /// One rational point strictly inside every root-free gap, with p's value there.
  std::vector<SignSample> gap_samples;
  /// A point with p < 0 (present unless verdict is Nonnegative).
  std::optional<SignSample> negative_witness;
  std::optional<SignSample> positive_witness;

  bool nonnegative() const { return verdict == SignVerdict::Nonnegative; }
  /// Independent re-check from the stored data: roots disjoint and inside the
  /// domain, samples interleave them, sample signs agree with the verdict.
  bool audit() const;
};

SignCertificate certify_sign(const RationalPolynomial& p, const Rational& a, const Rational& b);

/// Simplest dyadic rational strictly inside (lo, hi), lo < hi.
Rational simplest_dyadic_between(const Rational& lo, const Rational& hi);

}  // namespace habcert
