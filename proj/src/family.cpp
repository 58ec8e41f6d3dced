#include "habcert/family.hpp"

#include <cmath>

#include "habcert/error.hpp"

namespace habcert {

const char* to_string(Role r) {
  switch (r) {
    case Role::Q: return "q";
    case Role::H: return "h";
    case Role::S: return "S";
  }
  return "?";
}

const char* to_string(Normalization n) { return n == Normalization::Tau ? "TAU" : "THETA"; }

Role parse_role(const std::string& s) {
  if (s == "q" || s == "Q") return Role::Q;
  if (s == "h" || s == "H") return Role::H;
  if (s == "S" || s == "s") return Role::S;
  throw Error(ErrorKind::Parse, "unknown function role '" + s + "' (expected q, h or S)");
}

Normalization parse_normalization(const std::string& s) {
  if (s == "TAU") return Normalization::Tau;
  if (s == "THETA") return Normalization::Theta;
  throw Error(ErrorKind::Parse, "unknown normalization '" + s + "' (expected TAU or THETA)");
}

FamilyFunction::FamilyFunction(Role role, Rational scale, unsigned power, AlgebraicConstant knot,
                               Normalization normalization, RationalPolynomial perturbation, Rational epsilon)
    : role_(role),
      scale_(std::move(scale)),
      power_(power),
      knot_(std::move(knot)),
      normalization_(normalization),
      perturbation_(std::move(perturbation)),
      epsilon_(std::move(epsilon)) {
  if (knot_.compare(Rational(0)) <= 0) throw Error(ErrorKind::Domain, "family knot must be positive");
}

FamilyFunction FamilyFunction::with_epsilon(const Rational& eps) const {
  FamilyFunction f = *this;
  f.epsilon_ = eps;
  return f;
}

FamilyFunction FamilyFunction::with_role(Role r) const {
  FamilyFunction f = *this;
  f.role_ = r;
  return f;
}

Rational FamilyFunction::knot_coordinate() const { return normalization_ == Normalization::Tau ? 0 : 1; }
Rational FamilyFunction::origin_coordinate() const { return normalization_ == Normalization::Tau ? 1 : 0; }

RationalPolynomial FamilyFunction::factor() const {
  return RationalPolynomial::constant(1) - perturbation_ * epsilon_;
}

RationalPolynomial FamilyFunction::perturbation_in_ratio() const {
  if (normalization_ == Normalization::Theta) return perturbation_;
  return perturbation_.compose_affine(RationalPolynomial::affine(1, -1));
}

std::optional<Rational> FamilyFunction::exact_value(const Rational& x) const {
  if (x < 0) throw Error(ErrorKind::Domain, "family functions are defined for x >= 0");
  Rational pure = scale_ * pow(x, power_);
  if (x == 0) return power_ == 0 ? Rational(pure * factor()(origin_coordinate())) : Rational(0);
  if (knot_.compare(x) <= 0) return pure;
  return std::nullopt;
}

bool FamilyFunction::operator==(const FamilyFunction& o) const {
  return role_ == o.role_ && scale_ == o.scale_ && power_ == o.power_ && normalization_ == o.normalization_ &&
         perturbation_ == o.perturbation_ && epsilon_ == o.epsilon_ && knot_.same_value(o.knot_);
}

RationalPolynomial perturbation_R() { return RationalPolynomial({0, -2, 16, -34, 21}); }

RationalPolynomial perturbation_U() { return RationalPolynomial({0, 0, 2, -8, 7}); }

RationalPolynomial perturbation_V() {
  RationalPolynomial t2m1({-1, 0, 1});
  return RationalPolynomial({-3, 0, 7}) * t2m1.pow(3) * Rational(1, 3);
}

FamilyFunction build_q(const FamilyParams& p) {
  return FamilyFunction(Role::Q, 12, 1, knot_x0(), Normalization::Tau, perturbation_R(), p.epsilon);
}

FamilyFunction build_h(const FamilyParams& p) {
  return FamilyFunction(Role::H, 6, 2, knot_x0(), Normalization::Tau, perturbation_U(), p.epsilon);
}

FamilyFunction build_S(const FamilyParams& p) {
  return FamilyFunction(Role::S, 6, 4, knot_x1(), Normalization::Theta, perturbation_V(), p.epsilon);
}

FamilyFunction differentiate(const FamilyFunction& f) {
  if (f.power() == 0) throw Error(ErrorKind::NotApplicable, "derivative of a power-0 family leaves the family shape");
  const Rational p(f.power());
  const RationalPolynomial& pert = f.perturbation();
  RationalPolynomial z = RationalPolynomial::monomial(1, 1);
  RationalPolynomial next = f.normalization() == Normalization::Tau
                                ? pert - (RationalPolynomial::constant(1) - z) * pert.derivative() * (1 / p)
                                : pert + z * pert.derivative() * (1 / p);
  return FamilyFunction(f.role(), f.scale() * p, f.power() - 1, f.knot(), f.normalization(), next, f.epsilon());
}

FamilyFunction integrate_from_zero(const FamilyFunction& f) {
  const unsigned p = f.power();
  const Rational p1(p + 1);
  const RationalPolynomial& pert = f.perturbation();
  RationalPolynomial next;
  if (f.normalization() == Normalization::Tau) {
    // (1−τ)^(p+1)·U(τ) = (p+1)·∫_τ^1 (1−σ)^p R(σ) dσ
    RationalPolynomial one_minus = RationalPolynomial::affine(1, -1);
    RationalPolynomial anti = (one_minus.pow(p) * pert).antiderivative();
    RationalPolynomial integral = (RationalPolynomial::constant(anti(Rational(1))) - anti) * p1;
    DivMod dm = divmod(integral, one_minus.pow(p + 1));
    if (!dm.remainder.is_zero()) throw Error(ErrorKind::Domain, "integration left a non-polynomial perturbation");
    next = dm.quotient;
  } else {
    // θ^(p+1)·U(θ) = (p+1)·∫₀^θ σ^p R(σ) dσ
    std::vector<Rational> c;
    for (std::size_t k = 0; k < pert.coeffs().size(); ++k)
      c.push_back(pert.coeffs()[k] * p1 / Rational(static_cast<long>(k + p + 1)));
    next = RationalPolynomial(std::move(c));
  }
  Rational knot_coord = f.normalization() == Normalization::Tau ? 0 : 1;
  if (next(knot_coord) != 0)
    throw Error(ErrorKind::Domain, "antiderivative is not a pure power beyond the knot (perturbation nonzero there)");
  return FamilyFunction(f.role(), f.scale() / p1, p + 1, f.knot(), f.normalization(), next, f.epsilon());
}

FamilyFunction differentiate_h(const FamilyFunction& h) {
  if (h.role() != Role::H) throw Error(ErrorKind::RoleMismatch, "differentiate_h expects role h");
  return differentiate(h).with_role(Role::Q);
}

FamilyFunction integrate_q_to_h(const FamilyFunction& q) {
  if (q.role() != Role::Q) throw Error(ErrorKind::RoleMismatch, "integrate_q_to_h expects role q");
  return integrate_from_zero(q).with_role(Role::H);
}

FamilyFunction lift_h_to_S(const FamilyFunction& h) {
  if (h.role() != Role::H) throw Error(ErrorKind::RoleMismatch, "lift_h_to_S expects role h");
  if (h.normalization() != Normalization::Tau) throw Error(ErrorKind::NotApplicable, "lift_h_to_S expects a TAU-normalized h");
  if (h.power() == 0) throw Error(ErrorKind::NotApplicable, "lift_h_to_S needs power >= 1");
  const unsigned two_p = 2 * h.power();
  // s(x)/x = 4h(x²)/x = 4c·x^(2p−1)·(1 − ε·W(θ)), W(θ) = U(1 − θ²), θ = x/√knot.
  RationalPolynomial w = h.perturbation().compose_affine(RationalPolynomial::affine(1, -1)).substitute_power(2);
  std::vector<Rational> v;
  for (std::size_t k = 0; k < w.coeffs().size(); ++k)
    v.push_back(w.coeffs()[k] * Rational(two_p) / Rational(static_cast<long>(k + two_p)));
  RationalPolynomial pert(std::move(v));
  if (pert(Rational(1)) != 0) throw Error(ErrorKind::Domain, "lifted function is not a pure power beyond the knot");
  return FamilyFunction(Role::S, h.scale() * 4 / Rational(two_p), two_p, h.knot().sqrt(), Normalization::Theta, pert,
                        h.epsilon());
}

namespace {

Interval horner(const RationalPolynomial& p, const Interval& z) {
  Interval acc;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * z + Interval(*it);
  return acc;
}

}  // namespace

Interval eval_function(const FamilyFunction& f, const Rational& x, double width) {
  if (!(width > 0)) throw Error(ErrorKind::InvalidArgument, "evaluation width must be positive");
  if (auto v = f.exact_value(x)) return Interval(*v);
  Interval pure(f.scale() * pow(x, f.power()));
  Interval ex(x);
  double knot_width = width / 64;
  for (int attempt = 0; attempt < 64; ++attempt, knot_width /= 1024) {
    Interval k = f.knot().enclose(std::max(knot_width, 1e-300));
    Interval z = f.normalization() == Normalization::Tau ? Interval(Rational(1)) - ex / k : ex / k;
    Interval value = pure * (Interval(Rational(1)) - Interval(f.epsilon()) * horner(f.perturbation(), z));
    if (value.width() <= width) return value;
  }
  throw Error(ErrorKind::Domain, "could not reach the requested evaluation width");
}

bool ShapeReport::admissible() const {
  for (const ShapeCheck* c : {&continuous, &nonnegative, &nondecreasing, &log_convex})
    if (c->required && !c->passed) return false;
  return true;
}

namespace {

ShapeCheck certified(const RationalPolynomial& poly, bool required, const std::string& what) {
  ShapeCheck c;
  c.required = required;
  c.certificate = certify_sign(poly, 0, 1);
  c.passed = c.certificate->nonnegative();
  c.note = what + (c.passed ? ": certified nonnegative on [0,1]" : ": negative somewhere on [0,1]");
  return c;
}

}  // namespace

ShapeReport check_shape(const FamilyFunction& f) {
  ShapeReport rep;
  rep.role = f.role();
  rep.conformant = f.conformant();
  const Rational p(f.power());
  const Rational& eps = f.epsilon();
  const RationalPolynomial& pert = f.perturbation();
  const bool tau = f.normalization() == Normalization::Tau;
  const RationalPolynomial z = RationalPolynomial::monomial(1, 1);
  const RationalPolynomial one_minus_z = RationalPolynomial::affine(1, -1);
  const Rational kc = f.knot_coordinate();

  rep.continuous.required = true;
  rep.continuous.passed = pert(kc) == 0;
  rep.continuous.note = "perturbation at the knot coordinate = " + to_string(pert(kc));

  if (f.scale() < 0) {
    rep.nonnegative = {false, true, std::nullopt, "negative scale"};
    rep.nondecreasing = {false, f.role() != Role::Q, std::nullopt, "negative scale"};
    rep.log_convex = {false, f.role() == Role::S, std::nullopt, "negative scale"};
    return rep;
  }

  rep.nonnegative = certified(f.factor(), true, "1 - eps*perturbation");

  // f'(x) = scale·knot^(p−1)·(prefactor > 0)·D(z)
  RationalPolynomial D = tau ? f.factor() * p + one_minus_z * pert.derivative() * eps
                             : f.factor() * p - z * pert.derivative() * eps;
  rep.nondecreasing = certified(D, f.role() != Role::Q, "derivative factor D");
  if (eps * pert(kc) < 0) {
    rep.nondecreasing.passed = false;
    rep.nondecreasing.note += "; downward jump at the knot";
  }

  // x·f'(x) nondecreasing  <=>  L(z) >= 0, plus no downward jump of x·f' at the knot.
  RationalPolynomial L = tau ? D * p - one_minus_z * D.derivative() : D * p + z * D.derivative();
  rep.log_convex = certified(L, f.role() == Role::S, "x*f'(x) monotonicity factor L");
  if (D(kc) > p) {
    rep.log_convex.passed = false;
    rep.log_convex.note += "; x*f'(x) jumps down at the knot";
  }
  if (!rep.continuous.passed) rep.log_convex.passed = false;
  rep.sampled_convexity = sampled_log_convexity(f);
  rep.log_convex.note += rep.sampled_convexity ? "; sampled midpoint convexity of f(e^y) holds"
                                               : "; sampled midpoint convexity of f(e^y) FAILS";
  return rep;
}

bool sampled_log_convexity(const FamilyFunction& f, int points) {
  NumericFamily<long double> nf(f);
  const long double lo = std::log(nf.knot / 1000), hi = std::log(4 * nf.knot);
  const long double step = (hi - lo) / (points - 1);
  std::vector<long double> sigma(static_cast<std::size_t>(points));
  long double peak = 0;
  for (int i = 0; i < points; ++i) {
    sigma[static_cast<std::size_t>(i)] = nf(std::exp(lo + step * i));
    peak = std::max(peak, std::fabs(sigma[static_cast<std::size_t>(i)]));
  }
  const long double slack = 1e-13L * peak;
  for (std::size_t i = 1; i + 1 < sigma.size(); ++i)
    if (2 * sigma[i] > sigma[i - 1] + sigma[i + 1] + slack) return false;
  return true;
}

}  // namespace habcert
