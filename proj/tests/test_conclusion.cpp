#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "habcert/conclusion.hpp"
#include "habcert/error.hpp"

using namespace habcert;

namespace {

const ConjectureParams kC1 = ConjectureParams::standard(Formulation::C1);
const ConjectureParams kC2 = ConjectureParams::standard(Formulation::C2);
const ConjectureParams kC3 = ConjectureParams::standard(Formulation::C3);

FamilyFunction function_for(const ConjectureParams& p, const Rational& eps) {
  if (p.formulation == Formulation::C1) return build_S({eps});
  if (p.formulation == Formulation::C2) return build_h({eps});
  return build_q({eps});
}

// 30-digit values computed independently with mpmath.
constexpr long double kDelta1 = 0.000812152192470705053852835534L;
constexpr long double kDelta2 = 0.003248608769882820215411342137L;
constexpr long double kDelta3 = 0.012994435079531280861645368548L;

long double frozen_delta(Formulation f) {
  if (f == Formulation::C1) return kDelta1;
  if (f == Formulation::C2) return kDelta2;
  return kDelta3;
}

// Plain double evaluation of f·w written out from the definitions.
double integrand(Formulation form, double eps, double t) {
  const double x0 = std::pow(0.6, 0.25), x1 = std::pow(0.6, 0.125);
  switch (form) {
    case Formulation::C1: {
      double th = t / x1;
      double V = (7 * th * th - 3) * std::pow(th * th - 1, 3) / 3;
      double S = 6 * std::pow(t, 4) * (t < x1 ? 1 - eps * V : 1);
      double t8 = std::pow(t, 8);
      return S * t8 / (t * (1 + t8) * (1 + t8));
    }
    case Formulation::C2: {
      double tau = (x0 - t) / x0;
      double U = (7 * tau * tau - 8 * tau + 2) * tau * tau;
      double h = 6 * t * t * (t < x0 ? 1 - eps * U : 1);
      return h / (t * (1 + std::pow(t, 4)));
    }
    case Formulation::C3: {
      double tau = (x0 - t) / x0;
      double R = (21 * tau * tau * tau - 34 * tau * tau + 16 * tau - 2) * tau;
      double q = 12 * t * (t < x0 ? 1 - eps * R : 1);
      return q * std::log1p(std::pow(t, -4));
    }
  }
  return 0;
}

double midpoint_rule(Formulation form, double eps, double a, double b, long n) {
  double h = (b - a) / static_cast<double>(n), acc = 0;
  for (long i = 0; i < n; ++i) acc += integrand(form, eps, a + (static_cast<double>(i) + 0.5) * h);
  return acc * h;
}

// Quadrature of the pure tail on [T, 10⁴T] plus the leading asymptotic remainder.
double independent_tail(Formulation form, double T) {
  auto f = [form](double t) { return integrand(form, 0, t); };
  double X = 1e4 * T;
  double body = 0;
  for (double a = T; a < X; a *= 10)
    body += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, std::min(10 * a, X), 15, 1e-15);
  if (form == Formulation::C1) return body + 6 / (4 * std::pow(X, 4));
  if (form == Formulation::C2) return body + 3 / (X * X);
  return body + 6 / (X * X);
}

bool overlaps(const Interval& a, const Interval& b) {
  return !(a.upper_rational() < b.lower_rational() || b.upper_rational() < a.lower_rational());
}

}  // namespace

TEST_CASE("right-hand sides and weights") {
  CHECK(rhs_coefficient(kC1) == Rational(3, 8));
  CHECK(rhs_coefficient(kC2) == Rational(3, 2));
  CHECK(rhs_coefficient(kC3) == 6);
  CHECK(rhs_bound(kC2).closed_form() == "3/2*pi");
  for (const ConjectureParams& p : {kC1, kC2, kC3}) {
    RhsBound r = rhs_bound(p, 1e-25);
    CHECK(r.enclosure.width() <= 1e-25);
    CHECK(overlaps(r.enclosure, pi_interval() * Interval(r.coefficient)));
  }
  CHECK(std::fabs(static_cast<double>(rhs_bound(kC1).enclosure.mid()) - 3 * M_PI / 8) < 1e-15);
  CHECK(std::fabs(static_cast<double>(rhs_bound(kC3).enclosure.mid()) - 6 * M_PI) < 1e-14);

  CHECK(std::fabs(static_cast<double>(conclusion_weight(kC1)(1.0L)) - 0.25) < 1e-18);
  CHECK(std::fabs(static_cast<double>(conclusion_weight(kC2)(1.0L)) - 0.5) < 1e-18);
  CHECK(std::fabs(static_cast<double>(conclusion_weight(kC3)(1.0L)) - std::log(2.0)) < 1e-16);
  // C1 with λ maps to C2 with α = λ/2: same n, matching right-hand-side structure.
  ConjectureParams alpha = to_alpha_form(kC1);
  CHECK(alpha.formulation == Formulation::C2);
  CHECK(alpha.exponent == 2);
  CHECK(to_lambda_form(alpha) == kC1);
}

TEST_CASE("tail closed forms") {
  Interval pi = pi_interval();
  Interval t2 = tail_closed_form(kC2, 1);
  CHECK(overlaps(t2, pi * Interval(Rational(3, 4))));
  Interval t3 = tail_closed_form(kC3, 1);
  Interval three_pi_minus = pi * Interval(Rational(3)) - Interval(Rational(2)).log() * Interval(Rational(6));
  CHECK(overlaps(t3, three_pi_minus));
  CHECK(std::fabs(static_cast<double>(t3.mid()) - 5.265894877409708) < 1e-14);
  for (const ConjectureParams& p : {kC1, kC2, kC3}) {
    for (int T : {1, 2, 10}) {
      Interval c = tail_closed_form(p, T);
      CHECK(c.width() < 1e-25);
      CHECK(std::fabs(static_cast<double>(c.mid()) - independent_tail(p.formulation, T)) <= 1e-10);
    }
  }
  ConjectureParams other = kC2;
  other.exponent = 3;
  CHECK_THROWS_AS(tail_closed_form(other, 10), Error);
}

TEST_CASE("tail integrals: scaling and the quadrature fallback") {
  TailEvaluation standard = tail_integral(6, 2, kC2, 10);
  CHECK(standard.closed_form);
  TailEvaluation scaled = tail_integral(7, 2, kC2, 10);
  CHECK(scaled.closed_form);
  CHECK(overlaps(scaled.enclosure, standard.enclosure * Interval(Rational(7, 6))));

  ConjectureParams a3 = kC2;
  a3.exponent = 3;
  TailEvaluation fb = tail_integral(6, 2, a3, 10, 1e-14);
  CHECK_FALSE(fb.closed_form);
  CHECK(fb.cutoff > 10);
  auto f = [](double t) { return 6 * t * t / (t * (1 + std::pow(t, 6))); };
  double oracle = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 10, 1e4, 15, 1e-16) + 6 / (4 * 1e16);
  CHECK(std::fabs(static_cast<double>(fb.enclosure.mid()) - oracle) < 1e-13);
  CHECK(fb.enclosure.width() < 1e-13);

  ConjectureParams divergent = kC2;
  divergent.exponent = Rational(1, 2);
  CHECK_THROWS_AS(tail_integral(6, 2, divergent, 10), Error);
}

TEST_CASE("unperturbed functions attain equality") {
  for (const ConjectureParams& p : {kC1, kC2, kC3}) {
    ViolationReport r = violation_report(function_for(p, 0), p, 1e-12);
    CHECK(r.margin.contains(Rational(0)));
    CHECK(r.verdict == ConclusionVerdict::EqualityWithinTol);
    CHECK(r.lhs.achieved);
  }
}

TEST_CASE("perturbed functions violate the conclusion by the frozen margins") {
  for (PrecisionMode mode : {PrecisionMode::Standard, PrecisionMode::Extended}) {
    for (const ConjectureParams& p : {kC1, kC2, kC3}) {
      ViolationReport r = violation_report(function_for(p, 1), p, 1e-12, mode);
      CHECK(r.verdict == ConclusionVerdict::Violated);
      CHECK(r.total_budget < 1e-11);
      CHECK(std::fabs(static_cast<double>(r.margin.mid() - frozen_delta(p.formulation))) < 1e-9);
      CHECK(r.margin.contains(frozen_delta(p.formulation)));
      CHECK(r.lhs.tail_closed_form);
      CHECK(r.lhs.truncation == 10);
    }
  }
  // Δ₃ = 4Δ₂ by integration by parts; Δ₁ = Δ₂/4.
  CHECK(std::fabs(static_cast<double>(kDelta3 - 4 * kDelta2)) < 1e-25);
}

TEST_CASE("negative eps satisfies the conclusion") {
  for (const ConjectureParams& p : {kC1, kC2, kC3}) {
    ViolationReport r = violation_report(function_for(p, -1), p);
    CHECK(r.verdict == ConclusionVerdict::Satisfied);
  }
}

TEST_CASE("margin is linear and increasing in eps") {
  std::vector<Rational> eps{Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)};
  for (const ConjectureParams& p : {kC1, kC2, kC3}) {
    LinearityCheck lc = epsilon_linearity_check(function_for(p, 1), p, eps);
    REQUIRE(lc.margins.size() == eps.size());
    CHECK(lc.max_relative_deviation <= 1e-9L);
    CHECK(lc.max_relative_deviation <= lc.error_allowance + 1e-12L);
    for (std::size_t i = 0; i + 1 < lc.margins.size(); ++i)
      CHECK(lc.margins[i].upper_rational() < lc.margins[i + 1].lower_rational());
    CHECK(std::fabs(static_cast<double>(lc.ratios.front() - frozen_delta(p.formulation))) < 1e-9);
  }
  CHECK_THROWS_AS(epsilon_linearity_check(build_h({1}), kC2, {Rational(0), Rational(1)}), Error);
}

TEST_CASE("truncation point does not change the result") {
  for (const ConjectureParams& p : {kC1, kC2, kC3}) {
    auto f = function_for(p, 1);
    ConclusionEvaluation ref = conclusion_lhs(f, p, 1e-12);
    for (int T : {2, 5, 10}) {
      ConclusionEvaluation e = conclusion_lhs(f, p, 1e-12, PrecisionMode::Standard, Rational(T));
      CHECK(e.truncation == T);
      CHECK(std::fabs(static_cast<double>(e.enclosure.mid() - ref.enclosure.mid())) < 1e-11);
      CHECK(overlaps(e.enclosure, ref.enclosure));
    }
    CHECK_THROWS_AS(conclusion_lhs(f, p, 1e-12, PrecisionMode::Standard, Rational(1, 2)), Error);
  }
  CHECK_THROWS_AS(conclusion_lhs(build_q({1}), kC2), Error);
}

TEST_CASE("independent midpoint-rule oracle") {
  for (const ConjectureParams& p : {kC1, kC2, kC3}) {
    for (int e : {0, 1}) {
      double coarse = midpoint_rule(p.formulation, e, 0, 10, 500000);
      double fine = midpoint_rule(p.formulation, e, 0, 10, 1000000);
      double richardson = (4 * fine - coarse) / 3;
      double bound = std::fabs(fine - coarse) + 1e-11;
      double oracle = richardson + static_cast<double>(tail_closed_form(p, 10).mid());
      ConclusionEvaluation ev = conclusion_lhs(function_for(p, e), p, 1e-12);
      CHECK(std::fabs(static_cast<double>(ev.enclosure.mid()) - oracle) <= bound);
    }
  }
}

TEST_CASE("verdict names") {
  CHECK(std::string(to_string(ConclusionVerdict::Violated)) == "VIOLATED");
  CHECK(std::string(to_string(ConclusionVerdict::Satisfied)) == "SATISFIED");
  CHECK(std::string(to_string(ConclusionVerdict::EqualityWithinTol)) == "EQUALITY_WITHIN_TOL");
  CHECK(std::string(to_string(ConclusionVerdict::Inconclusive)) == "INCONCLUSIVE");
}
