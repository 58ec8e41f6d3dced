#include <doctest.h>

#include <cmath>

#include "habcert/error.hpp"
#include "habcert/hypothesis.hpp"

using namespace habcert;

namespace {

bool overlaps(const Interval& a, const Interval& b) {
  return !(a.upper_rational() < b.lower_rational() || b.upper_rational() < a.lower_rational());
}

const ConjectureParams kC1 = ConjectureParams::standard(Formulation::C1);
const ConjectureParams kC2 = ConjectureParams::standard(Formulation::C2);
const ConjectureParams kC3 = ConjectureParams::standard(Formulation::C3);

FamilyFunction function_for(const ConjectureParams& p, const Rational& eps) {
  if (p.formulation == Formulation::C1) return build_S({eps});
  if (p.formulation == Formulation::C2) return build_h({eps});
  return build_q({eps});
}

// Margins integrated by hand (and checked with a computer algebra system):
//   C2: M = k²s²(s − 1)⁴,  C1: M = k⁴s⁴(s² − 1)⁴,  C3: M = k·s(s − 1)⁴ for s = t/k <= 1, zero beyond.
Interval closed_form_margin(Formulation f, const Rational& t) {
  const AlgebraicConstant& knot = f == Formulation::C1 ? knot_x1() : knot_x0();
  Interval k = knot.enclose(1e-35);
  if (knot.compare(t) <= 0) return Interval(Rational(0));
  Interval s = Interval(t) / k;
  Interval sm1 = s - Interval(Rational(1));
  switch (f) {
    case Formulation::C2: return (k * s).pow(2) * sm1.pow(4);
    case Formulation::C1: return (k * s).pow(4) * (sm1 * (s + Interval(Rational(1)))).pow(4);
    case Formulation::C3: return k * s * sm1.pow(4);
  }
  return Interval();
}

}  // namespace

TEST_CASE("hypothesis kernels") {
  Rational half(1, 2);
  auto k2 = hypothesis_kernel(kC2);
  CHECK(k2.x_shift == -1);
  CHECK(k2.poly == RationalPolynomial{1, -1});
  CHECK_FALSE(k2.has_log());
  CHECK(std::fabs(static_cast<double>(k2(0.5L)) - 1.0) < 1e-18);
  auto k3 = hypothesis_kernel(kC3);
  CHECK(k3.has_log());
  CHECK(k3.log_coefficient == -1);
  CHECK(std::fabs(static_cast<double>(k3(0.5L)) - (std::log(2.0) - 0.5)) < 1e-15);
  CHECK(std::fabs(static_cast<double>(k3(1.0L))) < 1e-18);
  auto k1 = hypothesis_kernel(kC1);
  CHECK(std::fabs(static_cast<double>(k1(0.5L)) - 0.5) < 1e-18);
  ConjectureParams c1n3 = kC1;
  c1n3.n = 3;
  CHECK(std::fabs(static_cast<double>(hypothesis_kernel(c1n3)(0.5L)) - 0.375) < 1e-18);
  ConjectureParams c3n3 = kC3;
  c3n3.n = 3;
  // ∫ₓ¹ (1 − y)²/y dy = −ln x − 2(1 − x) + (1 − x²)/2.
  CHECK(std::fabs(static_cast<double>(hypothesis_kernel(c3n3)(0.5L)) - (std::log(2.0) - 1.0 + 0.375)) < 1e-15);
}

TEST_CASE("symbolic margins of the constructed functions") {
  RationalPolynomial sm1{-1, 1};
  auto m2 = symbolic_margin(build_h({1}), kC2);
  CHECK(m2.baseline_exact);
  CHECK(m2.baseline_coefficient == 1);
  CHECK(m2.baseline_power == 2);
  CHECK(m2.inner == sm1.pow(4) * Rational(1, 6));
  CHECK(m2.inner_prefactor.scale == 6);
  CHECK(m2.inner_prefactor.knot_power == 2);
  CHECK(m2.inner_prefactor.s_power == 2);
  CHECK(m2.inner_prefactor.to_string() == "6*knot^2*s^2");
  CHECK(m2.outer.is_zero());
  CHECK(m2.outer_A == 0);
  CHECK(m2.outer_B == 0);
  CHECK_FALSE(m2.via_fubini);

  auto m1 = symbolic_margin(build_S({1}), kC1);
  CHECK(m1.baseline_coefficient == 1);
  CHECK(m1.baseline_power == 4);
  CHECK(m1.inner == (RationalPolynomial{-1, 0, 1}).pow(4) * Rational(1, 6));
  CHECK(m1.outer.is_zero());
  CHECK(m1.knot.same_value(knot_x1()));

  auto m3 = symbolic_margin(build_q({1}), kC3);
  CHECK(m3.via_fubini);
  CHECK(m3.baseline_coefficient == 1);
  CHECK(m3.baseline_power == 1);
  CHECK(m3.inner == sm1.pow(4) * Rational(1, 6));
  CHECK(m3.outer.is_zero());

  // The margin does not depend on ε: it is the coefficient of −ε.
  CHECK(symbolic_margin(build_h({Rational(1, 3)}), kC2).inner == m2.inner);
}

TEST_CASE("margins match the hand-integrated closed forms") {
  for (const ConjectureParams& p : {kC1, kC2, kC3}) {
    auto m = symbolic_margin(function_for(p, 1), p);
    for (int j = 0; j <= 60; ++j) {
      Rational t = make_rational(j, 20);
      Interval got = m.evaluate(t, 1e-30);
      CHECK(overlaps(got.inflate(1e-28L), closed_form_margin(p.formulation, t)));
    }
  }
}

TEST_CASE("lhs is affine in eps") {
  for (const ConjectureParams& p : {kC1, kC2, kC3}) {
    auto m = symbolic_margin(function_for(p, 1), p);
    for (int j = 1; j <= 12; ++j) {
      Rational t = make_rational(j, 10);
      Interval l0 = m.lhs(t, 0), l1 = m.lhs(t, 1);
      for (const Rational& e : {Rational(-2), Rational(1, 3), Rational(7, 4)}) {
        Interval expected = l0 + (l1 - l0) * Interval(e);
        CHECK(overlaps(m.lhs(t, e).inflate(1e-26L), expected));
      }
    }
  }
}

TEST_CASE("symbolic lhs agrees with direct quadrature") {
  for (const ConjectureParams& p : {kC1, kC2, kC3}) {
    auto f = function_for(p, 1);
    auto m = symbolic_margin(f, p);
    for (int j = 1; j <= 50; ++j) {
      Rational t = make_rational(j, 16);
      Interval sym = m.lhs(t, 1);
      Interval num = numeric_lhs(f, p, t, 1e-12);
      CHECK(num.width() < 1e-10);
      CHECK(overlaps(sym, num));
    }
  }
}

TEST_CASE("extended precision quadrature agrees") {
  for (const ConjectureParams& p : {kC1, kC2, kC3}) {
    auto f = function_for(p, 1);
    auto m = symbolic_margin(f, p);
    for (const Rational& t : {Rational(1, 10), Rational(1, 2), Rational(2)}) {
      Interval num = numeric_lhs(f, p, t, 1e-20, PrecisionMode::Extended);
      CHECK(num.width() < 1e-18);
      CHECK(overlaps(m.lhs(t, 1), num));
    }
  }
}

TEST_CASE("Fubini reduction: t times the C3 lhs of q equals the C2 lhs of h") {
  for (const Rational& e : {Rational(1, 2), Rational(1)}) {
    auto q = build_q({e});
    auto h = build_h({e});
    for (int j = 1; j <= 20; ++j) {
      Rational t = make_rational(j, 8);
      Interval l3 = numeric_lhs(q, kC3, t, 1e-13) * Interval(t);
      Interval l2 = numeric_lhs(h, kC2, t, 1e-13);
      CHECK(std::fabs(static_cast<double>(l3.mid() - l2.mid())) <= 1e-10);
    }
  }
  auto reduced = fubini_reduction(build_h({1}), kC3);
  CHECK(reduced.via_fubini);
  CHECK(reduced.inner == symbolic_margin(build_q({1}), kC3).inner);
  RationalPolynomial shifted = perturbation_U() + RationalPolynomial::constant(1);
  FamilyFunction h_bad(Role::H, 6, 0, knot_x0(), Normalization::Tau, shifted, 1);
  CHECK_THROWS_AS(fubini_reduction(h_bad, kC3), Error);
}

TEST_CASE("certification verdicts") {
  for (const ConjectureParams& p : {kC1, kC2, kC3}) {
    auto cert = certify_hypothesis(function_for(p, 1), p);
    CHECK(cert.verdict == HypothesisVerdict::Certified);
    REQUIRE(cert.inner.has_value());
    CHECK(cert.inner->nonnegative());
    CHECK(cert.inner->audit());
    CHECK_FALSE(cert.witness_t.has_value());
    if (p.formulation == Formulation::C3) {
      REQUIRE(cert.fubini_deviation.has_value());
      CHECK(*cert.fubini_deviation < 1e-9);
    }

    CHECK(certify_hypothesis(function_for(p, 0), p).verdict == HypothesisVerdict::Certified);
    CHECK(certify_hypothesis(function_for(p, 2), p).verdict == HypothesisVerdict::Certified);

    auto neg = certify_hypothesis(function_for(p, -1), p);
    CHECK(neg.verdict == HypothesisVerdict::Refuted);
    REQUIRE(neg.witness_t.has_value());
    REQUIRE(neg.witness_coordinate.has_value());
    // The witness really violates the hypothesis: LHS(t) > t^exponent by direct quadrature.
    Rational t = neg.witness_t->upper_rational();
    auto f = function_for(p, -1);
    Interval lhs = numeric_lhs(f, p, t, 1e-14);
    Rational e = p.hypothesis_exponent();
    Interval rhs = Interval(t).pow(static_cast<unsigned>(e.get_num().get_ui()));
    CHECK(lhs.lower_rational() > rhs.upper_rational());
  }
}

TEST_CASE("brute-force scan of the margin sign") {
  for (const ConjectureParams& p : {kC1, kC2, kC3}) {
    auto m = symbolic_margin(function_for(p, 1), p);
    Rational span = m.knot.enclose(1e-20).upper_rational() * 4;
    int negative = 0;
    for (int i = 0; i <= 10000; ++i) {
      Interval v = m.evaluate(span * make_rational(i, 10000), 1e-25);
      if (v.upper() < 0) ++negative;
    }
    CHECK(negative == 0);
  }
}

TEST_CASE("non-baseline inputs and role mismatches") {
  ConjectureParams a3 = kC2;
  a3.exponent = 3;
  CHECK_THROWS_AS(symbolic_margin(build_h({1}), a3), Error);
  CHECK(certify_hypothesis(build_h({1}), a3).verdict == HypothesisVerdict::NotApplicable);
  ConjectureParams n3 = kC2;
  n3.n = 3;
  auto na = certify_hypothesis(build_h({1}), n3);
  CHECK(na.verdict == HypothesisVerdict::NotApplicable);
  CHECK_FALSE(na.reason.empty());
  try {
    symbolic_margin(build_q({1}), kC2);
    FAIL("expected a role mismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RoleMismatch);
  }
  try {
    symbolic_margin(build_h({1}), a3);
    FAIL("expected not applicable");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotApplicable);
  }
}

TEST_CASE("lhs at t = 0 is exactly zero") {
  for (const ConjectureParams& p : {kC1, kC2, kC3}) {
    Interval z = numeric_lhs(function_for(p, 1), p, 0);
    CHECK(z.is_point());
    CHECK(z.contains(Rational(0)));
  }
}

TEST_CASE("vanishing moments") {
  RationalPolynomial one_minus_z{1, -1};
  auto m = vanishing_moments(perturbation_U(), {one_minus_z, one_minus_z.pow(2), RationalPolynomial::constant(1)});
  REQUIRE(m.size() == 3);
  CHECK(m[0] == 0);
  CHECK(m[1] == 0);
  CHECK(m[2] == Rational(1, 15));
  auto v = vanishing_moments(perturbation_V(), {RationalPolynomial::monomial(1, 5), RationalPolynomial::monomial(1, 0)});
  CHECK(v[0] == 0);
  CHECK(v[1] != 0);
}

TEST_CASE("verdict names") {
  CHECK(std::string(to_string(HypothesisVerdict::Certified)) == "CERTIFIED");
  CHECK(std::string(to_string(HypothesisVerdict::Refuted)) == "REFUTED");
  CHECK(std::string(to_string(HypothesisVerdict::NotApplicable)) == "NOT_APPLICABLE");
}
