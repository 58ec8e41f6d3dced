#include <doctest.h>

#include <cmath>
#include <random>

#include "habcert/definition.hpp"
#include "habcert/error.hpp"
#include "habcert/family.hpp"

using namespace habcert;

namespace {

const char* kX0 = "0.8801117367933933972710824055657918938690";
const char* kX1 = "0.9381427059852852670747438941345509313988";

Interval decimal_ball(const char* digits) { return Interval::from_decimal(digits, digits).inflate(1e-38L); }

bool overlaps(const Interval& a, const Interval& b) {
  return !(a.upper_rational() < b.lower_rational() || b.upper_rational() < a.lower_rational());
}

// A rational within 1e-30 of c/2.
Rational half_of(const AlgebraicConstant& c) { return c.enclose(1e-30).lower_rational() / 2; }

}  // namespace

TEST_CASE("perturbation identities") {
  RationalPolynomial R = perturbation_R(), U = perturbation_U(), V = perturbation_V();
  RationalPolynomial one_minus_tau = RationalPolynomial::affine(1, -1);
  CHECK(R == U - one_minus_tau * U.derivative() * Rational(1, 2));
  RationalPolynomial theta{0, 1};
  CHECK(V + theta * V.derivative() * Rational(1, 4) == U.compose_affine(one_minus_tau).substitute_power(2));
  // Knot continuity: perturbations vanish at the knot coordinate.
  CHECK(R(0) == 0);
  CHECK(U(0) == 0);
  CHECK(U.derivative()(0) == 0);
  CHECK(V(1) == 0);
  CHECK(V.derivative()(1) == 0);
  CHECK(V.derivative().derivative()(1) == 0);
  CHECK(R(1) == 1);
  CHECK(U(1) == 1);
  CHECK(V(0) == 1);
}

TEST_CASE("builders produce the documented functions") {
  auto q = build_q({1}), h = build_h({1}), S = build_S({1});
  CHECK(q.role() == Role::Q);
  CHECK(q.scale() == 12);
  CHECK(q.power() == 1);
  CHECK(q.perturbation() == perturbation_R());
  CHECK(q.normalization() == Normalization::Tau);
  CHECK(h.scale() == 6);
  CHECK(h.power() == 2);
  CHECK(h.perturbation() == perturbation_U());
  CHECK(S.scale() == 6);
  CHECK(S.power() == 4);
  CHECK(S.perturbation() == perturbation_V());
  CHECK(S.normalization() == Normalization::Theta);
  CHECK(q.knot().same_value(knot_x0()));
  CHECK(S.knot().same_value(knot_x1()));
  CHECK(q.knot_coordinate() == 0);
  CHECK(q.origin_coordinate() == 1);
  CHECK(S.knot_coordinate() == 1);
  CHECK(S.origin_coordinate() == 0);
}

TEST_CASE("transforms chain q, h and S exactly") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> num(-40, 40), den(1, 40);
  std::vector<Rational> eps{Rational(1, 4), Rational(1, 2), Rational(1)};
  for (int i = 0; i < 20; ++i) eps.push_back(make_rational(num(rng), den(rng)));
  for (const auto& e : eps) {
    auto q = build_q({e}), h = build_h({e}), S = build_S({e});
    CHECK(differentiate_h(h) == q);
    CHECK(integrate_q_to_h(q) == h);
    CHECK(lift_h_to_S(h) == S);
    CHECK(integrate_q_to_h(differentiate_h(h)) == h);
    auto dq = differentiate(integrate_from_zero(q));
    CHECK(dq == q);
  }
  CHECK_THROWS_AS(differentiate_h(build_q({1})), Error);
  CHECK_THROWS_AS(integrate_q_to_h(build_h({1})), Error);
  CHECK_THROWS_AS(lift_h_to_S(build_q({1})), Error);
}

TEST_CASE("point values at eps = 1") {
  auto q = build_q({1}), h = build_h({1}), S = build_S({1});
  // τ = 1/2: R = 1/16, U = −1/16; θ = 1/2: V = 45/256.
  CHECK(perturbation_R()(Rational(1, 2)) == Rational(1, 16));
  CHECK(perturbation_U()(Rational(1, 2)) == Rational(-1, 16));
  CHECK(perturbation_V()(Rational(1, 2)) == Rational(45, 256));
  Interval q_oracle = decimal_ball(kX0) * Interval(Rational(6 * 15, 16));
  Interval x0sq = decimal_ball(kX0).pow(2);
  Interval h_oracle = x0sq * Interval(Rational(6 * 17, 4 * 16));
  Interval S_oracle = decimal_ball(kX1).pow(4) * Interval(Rational(6 * 211, 16 * 256));

  Interval qv = eval_function(q, half_of(q.knot()), 1e-20);
  Interval hv = eval_function(h, half_of(h.knot()), 1e-20);
  Interval Sv = eval_function(S, half_of(S.knot()), 1e-20);
  CHECK(qv.width() <= 1e-20);
  CHECK(overlaps(qv.inflate(1e-28L), q_oracle));
  CHECK(overlaps(hv.inflate(1e-28L), h_oracle));
  CHECK(overlaps(Sv.inflate(1e-28L), S_oracle));
  CHECK(std::fabs(static_cast<double>(qv.mid()) - 4.950628519462838) < 1e-14);
  CHECK(std::fabs(static_cast<double>(hv.mid()) - 1.234513441603614) < 1e-14);
  CHECK(std::fabs(static_cast<double>(Sv.mid()) - 0.239413911928642) < 1e-14);
}

TEST_CASE("values at the origin, the knot and beyond") {
  for (const Rational& e : {Rational(0), Rational(1, 2), Rational(1), Rational(-3)}) {
    auto q = build_q({e}), h = build_h({e}), S = build_S({e});
    CHECK(*q.exact_value(0) == 0);
    CHECK(*h.exact_value(0) == 0);
    CHECK(*S.exact_value(0) == 0);
    CHECK(*q.exact_value(1) == 12);
    CHECK(*h.exact_value(2) == 24);
    CHECK(*S.exact_value(1) == 6);
    CHECK_FALSE(q.exact_value(Rational(1, 2)).has_value());
    // At the knot each function equals its pure power.
    Interval at_knot = eval_function(q, q.knot().enclose(1e-30).lower_rational(), 1e-18);
    CHECK(overlaps(at_knot.inflate(1e-25L), decimal_ball(kX0) * Interval(Rational(12))));
    Interval s_knot = eval_function(S, S.knot().enclose(1e-30).upper_rational(), 1e-18);
    CHECK(overlaps(s_knot.inflate(1e-25L), decimal_ball(kX1).pow(4) * Interval(Rational(6))));
  }
  auto q = build_q({1});
  Interval q_knot = eval_function(q, q.knot().enclose(1e-30).upper_rational(), 1e-15);
  CHECK(std::fabs(static_cast<double>(q_knot.mid()) - 10.56134084152072) < 1e-13);
  auto h = build_h({1});
  Interval h_knot = eval_function(h, h.knot().enclose(1e-30).upper_rational(), 1e-15);
  CHECK(std::fabs(static_cast<double>(h_knot.mid()) - 4.647580015448900) < 1e-13);
}

TEST_CASE("functions are affine in eps") {
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> num(-30, 30), den(1, 17);
  for (auto build : {build_q, build_h, build_S}) {
    auto f0 = build({0}), f1 = build({1});
    for (int i = 0; i < 10; ++i) {
      Rational e = make_rational(num(rng), den(rng));
      auto fe = build({e});
      CHECK(fe.factor() == f0.factor() + (f1.factor() - f0.factor()) * e);
      Rational x = make_rational(1 + std::abs(num(rng)), 40);
      Interval lhs = eval_function(fe, x, 1e-20);
      Interval rhs = eval_function(f0, x, 1e-20) + (eval_function(f1, x, 1e-20) - eval_function(f0, x, 1e-20)) * Interval(e);
      CHECK(overlaps(lhs.inflate(1e-18L), rhs));
    }
  }
}

TEST_CASE("enclosures contain floating evaluations and tighten") {
  auto h = build_h({1});
  NumericFamily<long double> nh(h);
  for (int i = 1; i <= 50; ++i) {
    Rational x = make_rational(i, 40);
    Interval v = eval_function(h, x, 1e-15);
    CHECK(v.width() <= 1e-15);
    long double fx = nh(static_cast<long double>(to_long_double(x)));
    CHECK(std::fabs(static_cast<double>(fx - v.mid())) < 1e-15);
    CHECK(v.contains(eval_function(h, x, 1e-25)));
  }
}

TEST_CASE("shape checks by role") {
  SUBCASE("eps = 1") {
    ShapeReport q = check_shape(build_q({1}));
    CHECK(q.continuous.passed);
    CHECK(q.nonnegative.passed);
    CHECK_FALSE(q.nondecreasing.passed);
    CHECK_FALSE(q.nondecreasing.required);
    CHECK(q.admissible());
    ShapeReport h = check_shape(build_h({1}));
    CHECK(h.continuous.passed);
    CHECK(h.nonnegative.passed);
    CHECK(h.nondecreasing.passed);
    CHECK(h.nondecreasing.required);
    CHECK(h.admissible());
    ShapeReport S = check_shape(build_S({1}));
    CHECK(S.nondecreasing.passed);
    CHECK(S.log_convex.passed);
    CHECK(S.log_convex.required);
    CHECK(S.sampled_convexity);
    CHECK(S.admissible());
  }
  SUBCASE("eps = 0 passes everything") {
    for (auto build : {build_q, build_h, build_S}) {
      ShapeReport r = check_shape(build({0}));
      CHECK(r.continuous.passed);
      CHECK(r.nonnegative.passed);
      CHECK(r.nondecreasing.passed);
      CHECK(r.log_convex.passed);
      CHECK(r.admissible());
    }
  }
  SUBCASE("eps = 2 breaks q") {
    ShapeReport q = check_shape(build_q({2}));
    CHECK_FALSE(q.nonnegative.passed);
    CHECK_FALSE(q.admissible());
    CHECK_FALSE(q.conformant);
    REQUIRE(q.nonnegative.certificate.has_value());
    CHECK(q.nonnegative.certificate->audit());
  }
  SUBCASE("certificates audit") {
    ShapeReport S = check_shape(build_S({1}));
    for (const ShapeCheck* c : {&S.nonnegative, &S.nondecreasing, &S.log_convex})
      if (c->certificate) CHECK(c->certificate->audit());
  }
}

TEST_CASE("definition files round trip") {
  for (const Rational& e : {Rational(1), Rational(1, 3), Rational(-2)}) {
    for (auto f : {build_q({e}), build_h({e}), build_S({e})}) {
      std::string text = write_definition(f);
      CHECK(parse_definition(text, f.role()) == f);
      CHECK(parse_definition(text, f.role(), Rational(1, 7)) == f.with_epsilon(Rational(1, 7)));
    }
  }
  CHECK_THROWS_AS(parse_definition("{", Role::Q), Error);
  CHECK_THROWS_AS(parse_definition(R"({"scale":"6"})", Role::H), Error);
  std::string bad_bracket = R"({"scale":"6","power":2,"knot":{"defining_poly":["-1","0","1"],"bracket":["-2","2"]},)"
                            R"("normalization":"TAU","perturbation":["0"],"epsilon":"1"})";
  CHECK_THROWS_AS(parse_definition(bad_bracket, Role::H), Error);
  std::string no_eps = R"({"scale":"6","power":2,"knot":{"defining_poly":["-3","0","0","0","5"],"bracket":["0","1"]},)"
                       R"("normalization":"TAU","perturbation":["0","0","2","-8","7"]})";
  CHECK_THROWS_AS(parse_definition(no_eps, Role::H), Error);
  CHECK(parse_definition(no_eps, Role::H, Rational(1)) == build_h({1}));
  CHECK_THROWS_AS(load_definition("/nonexistent/definition.json", Role::H), Error);
}

TEST_CASE("role and normalization names") {
  for (Role r : {Role::Q, Role::H, Role::S}) CHECK(parse_role(to_string(r)) == r);
  for (Normalization n : {Normalization::Tau, Normalization::Theta}) CHECK(parse_normalization(to_string(n)) == n);
  CHECK_THROWS_AS(parse_role("Q2"), Error);
  CHECK_THROWS_AS(parse_normalization("tau"), Error);
}
