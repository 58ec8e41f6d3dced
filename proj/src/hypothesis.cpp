#include "habcert/hypothesis.hpp"

#include <cmath>

#include "habcert/error.hpp"
#include "habcert/quadrature.hpp"

namespace habcert {

const char* to_string(HypothesisVerdict v) {
  switch (v) {
    case HypothesisVerdict::Certified: return "CERTIFIED";
    case HypothesisVerdict::Refuted: return "REFUTED";
    case HypothesisVerdict::NotApplicable: return "NOT_APPLICABLE";
  }
  return "?";
}

Interval Prefactor::evaluate(const Interval& knot, const Interval& s) const {
  Interval v = Interval(scale) * knot.pow(knot_power);
  if (s_power >= 0) return v * s.pow(static_cast<unsigned>(s_power));
  return v / s.pow(static_cast<unsigned>(-s_power));
}

std::string Prefactor::to_string() const {
  return habcert::to_string(scale) + "*knot^" + std::to_string(knot_power) + "*s^" + std::to_string(s_power);
}

namespace {

Interval horner(const RationalPolynomial& p, const Interval& z) {
  Interval acc;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * z + Interval(*it);
  return acc;
}

// ∫₀¹ x^p·ln x dx = −1/(p+1)²
Rational log_moment(unsigned p) { return Rational(-1) / Rational((p + 1) * (p + 1)); }

Rational baseline_integral(const HypothesisKernel& k, unsigned p) {
  if (static_cast<int>(p) + k.x_shift < 0)
    throw Error(ErrorKind::NotApplicable, "kernel times the pure power is not integrable at 0");
  RationalPolynomial kp = k.poly * RationalPolynomial::monomial(1, p + static_cast<unsigned>(k.x_shift));
  Rational v = kp.integrate(0, 1);
  if (k.has_log()) v += k.log_coefficient * log_moment(p);
  return v;
}

void fill_outer_affine(HypothesisMargin& m, unsigned p) {
  m.outer_A = p >= 1 ? m.outer.coeff(p - 1) : Rational(0);
  m.outer_B = -m.outer.coeff(p);
  m.outer_is_affine = true;
  for (int i = 0; i <= m.outer.degree(); ++i)
    if (m.outer.coeff(static_cast<unsigned>(i)) != 0 && static_cast<unsigned>(i) != p && static_cast<unsigned>(i + 1) != p)
      m.outer_is_affine = false;
}

HypothesisMargin polynomial_kernel_margin(const FamilyFunction& f, const ConjectureParams& params) {
  const HypothesisKernel k = hypothesis_kernel(params);
  const unsigned p = f.power();
  HypothesisMargin m;
  m.params = params;
  m.knot = f.knot();
  m.baseline_coefficient = f.scale() * baseline_integral(k, p);
  m.baseline_power = p;
  m.baseline_exact = m.baseline_coefficient == 1 && m.baseline_power == params.hypothesis_exponent();
  if (!m.baseline_exact)
    throw Error(ErrorKind::NotApplicable, "unperturbed tail does not give LHS = t^exponent exactly (scale*integral = " +
                                              to_string(m.baseline_coefficient) + ", power " + std::to_string(p) +
                                              "); use numeric_lhs");
  const RationalPolynomial kp = k.poly * RationalPolynomial::monomial(1, p + static_cast<unsigned>(k.x_shift));
  const RationalPolynomial a = f.perturbation_in_ratio();

  // Inner: t = knot·s, M = c·knot^p·s^p·Σ a_j s^j ∫₀¹ x^j Kp(x) dx.
  std::vector<Rational> inner;
  for (std::size_t j = 0; j < a.coeffs().size(); ++j)
    inner.push_back(a.coeffs()[j] * (kp * RationalPolynomial::monomial(1, static_cast<unsigned>(j))).integrate(0, 1));
  m.inner = RationalPolynomial(std::move(inner));
  m.inner_prefactor = {f.scale(), p, static_cast<int>(p)};

  // Outer: u = knot/t, x = u·y, M = c·knot^p·s^(p−1)·Σ κ_i u^i ∫₀¹ y^i A(y) dy.
  std::vector<Rational> outer;
  for (std::size_t i = 0; i < kp.coeffs().size(); ++i)
    outer.push_back(kp.coeffs()[i] * (a * RationalPolynomial::monomial(1, static_cast<unsigned>(i))).integrate(0, 1));
  m.outer = RationalPolynomial(std::move(outer));
  m.outer_prefactor = {f.scale(), p, static_cast<int>(p) - 1};
  fill_outer_affine(m, p);
  return m;
}

}  // namespace

HypothesisMargin fubini_reduction(const FamilyFunction& h, const ConjectureParams& c3) {
  if (c3.formulation != Formulation::C3) throw Error(ErrorKind::InvalidArgument, "fubini_reduction expects C3 parameters");
  if (h.role() != Role::H) throw Error(ErrorKind::RoleMismatch, "fubini_reduction expects role h");
  auto h0 = h.exact_value(0);
  if (!h0 || *h0 != 0) throw Error(ErrorKind::Domain, "Fubini reduction needs h(0) = 0");
  ConjectureParams c2{Formulation::C2, c3.n, c3.exponent};
  HypothesisMargin m = polynomial_kernel_margin(h, c2);
  m.params = c3;
  m.baseline_power = m.baseline_power - 1;
  m.baseline_exact = m.baseline_coefficient == 1 && m.baseline_power == c3.hypothesis_exponent();
  // Dividing by t = knot·s.
  if (m.inner_prefactor.knot_power == 0)
    throw Error(ErrorKind::NotApplicable, "Fubini reduction needs h with power >= 1");
  m.inner_prefactor.knot_power -= 1;
  m.inner_prefactor.s_power -= 1;
  m.outer_prefactor.knot_power -= 1;
  m.outer_prefactor.s_power -= 1;
  m.via_fubini = true;
  return m;
}

HypothesisMargin symbolic_margin(const FamilyFunction& f, const ConjectureParams& params) {
  params.validate();
  if (f.role() != role_for(params.formulation))
    throw Error(ErrorKind::RoleMismatch, std::string("conjecture ") + to_string(params.formulation) + " takes role " +
                                             to_string(role_for(params.formulation)) + ", got " + to_string(f.role()));
  if (params.formulation != Formulation::C3) return polynomial_kernel_margin(f, params);

  const HypothesisKernel k = hypothesis_kernel(params);
  const Rational direct = f.scale() * baseline_integral(k, f.power());
  if (direct != 1 || Rational(f.power()) != params.hypothesis_exponent())
    throw Error(ErrorKind::NotApplicable, "unperturbed tail of q does not give LHS = t^(alpha-1) exactly; use numeric_lhs");
  FamilyFunction h = [&] {
    try {
      return integrate_q_to_h(f);
    } catch (const Error& e) {
      throw Error(ErrorKind::NotApplicable, std::string("no family antiderivative for the Fubini reduction: ") + e.what());
    }
  }();
  HypothesisMargin m = fubini_reduction(h, params);
  m.baseline_coefficient = direct;
  return m;
}

Interval HypothesisMargin::evaluate(const Rational& t, double width) const {
  if (t < 0) throw Error(ErrorKind::Domain, "margin is defined for t >= 0");
  const Interval kn = knot.enclose(width);
  const Interval ti(t);
  if (knot.compare(t) >= 0) {
    if (t == 0 && inner_prefactor.s_power > 0) return Interval(Rational(0));
    Interval s = ti / kn;
    return inner_prefactor.evaluate(kn, s) * horner(inner, s);
  }
  Interval s = ti / kn;
  Interval u = kn / ti;
  return outer_prefactor.evaluate(kn, s) * horner(outer, u);
}

Interval HypothesisMargin::lhs(const Rational& t, const Rational& epsilon, double width) const {
  if (baseline_power < 0 || baseline_power.get_den() != 1)
    throw Error(ErrorKind::NotApplicable, "symbolic LHS needs an integer baseline power");
  Rational base = baseline_coefficient * pow(t, static_cast<unsigned>(baseline_power.get_num().get_ui()));
  return Interval(base) - Interval(epsilon) * evaluate(t, width);
}

namespace {

// A point in (0, 1] where poly < 0, starting from the certificate's witness.
std::optional<Rational> positive_negative_point(const SignCertificate& cert) {
  if (!cert.negative_witness) return std::nullopt;
  Rational x = cert.negative_witness->point;
  if (x > 0) return x;
  for (int k = 1; k < 400; ++k) {
    x = Rational(1, 1) / pow(Rational(2), static_cast<unsigned>(k));
    if (cert.polynomial(x) < 0) return x;
  }
  return std::nullopt;
}

}  // namespace

MarginCertificate certify_hypothesis(const FamilyFunction& f, const ConjectureParams& params) {
  MarginCertificate mc;
  mc.params = params;
  mc.epsilon = f.epsilon();
  try {
    mc.margin = symbolic_margin(f, params);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotApplicable && e.kind() != ErrorKind::Domain) throw;
    mc.verdict = HypothesisVerdict::NotApplicable;
    mc.reason = e.what();
    return mc;
  }
  const HypothesisMargin& m = *mc.margin;

  if (params.formulation == Formulation::C3) {
    const FamilyFunction h = integrate_q_to_h(f);
    const ConjectureParams c2{Formulation::C2, params.n, params.exponent};
    double worst = 0;
    for (const Rational& t : {Rational(1, 4), Rational(1, 2), Rational(1), Rational(3, 2), Rational(3)}) {
      Interval lhs3 = numeric_lhs(f, params, t, 1e-13);
      Interval lhs2 = numeric_lhs(h, c2, t, 1e-13);
      Interval diff = Interval(t) * lhs3 - lhs2;
      worst = std::max(worst, static_cast<double>(std::max(std::fabs(diff.lower()), std::fabs(diff.upper()))));
    }
    mc.fubini_deviation = worst;
    if (worst > 1e-9) {
      mc.verdict = HypothesisVerdict::NotApplicable;
      mc.reason = "numeric cross-check of t*LHS3(t) = LHS2(t) failed";
      return mc;
    }
  }

  const int sign = f.epsilon() < 0 ? -1 : 1;
  mc.inner = certify_sign(m.inner * Rational(sign), 0, 1);
  mc.outer = certify_sign(m.outer * Rational(sign), 0, 1);
  if (f.epsilon() == 0) {
    mc.verdict = HypothesisVerdict::Certified;
    mc.reason = "epsilon = 0: LHS equals t^exponent identically";
    return mc;
  }
  if (mc.inner->nonnegative() && mc.outer->nonnegative()) {
    mc.verdict = HypothesisVerdict::Certified;
    mc.reason = sign > 0 ? "margin nonnegative on [0, knot] and beyond" : "margin nonpositive on [0, knot] and beyond";
    return mc;
  }
  mc.verdict = HypothesisVerdict::Refuted;
  const Interval kn = m.knot.enclose(1e-30);
  if (auto s = mc.inner->nonnegative() ? std::nullopt : positive_negative_point(*mc.inner)) {
    mc.witness_coordinate = *s;
    mc.witness_t = kn * Interval(*s);
    mc.reason = "margin has the wrong sign at t = knot*" + to_string(*s);
  } else if (auto u = positive_negative_point(*mc.outer)) {
    mc.witness_coordinate = *u;
    mc.witness_in_outer = true;
    mc.witness_t = kn / Interval(*u);
    mc.reason = "margin has the wrong sign at t = knot/" + to_string(*u);
  } else {
    mc.reason = "margin has the wrong sign (no interior witness found)";
  }
  return mc;
}

namespace {

template <class Real>
Interval numeric_lhs_impl(const FamilyFunction& f, const ConjectureParams& params, const Rational& t, double tol) {
  using std::abs;
  const HypothesisKernel k = hypothesis_kernel(params);
  const NumericFamily<Real> nf(f);
  const Real tr = to_real<Real>(t);
  std::function<Real(Real)> g = [&](Real x) { return k(x) * nf(tr * x); };
  Real xb = nf.knot / tr;
  const Real rtol = tol;
  QuadratureResult<Real> total;
  auto add = [&](const QuadratureResult<Real>& r) {
    total.value += r.value;
    total.error_bound += r.error_bound;
    total.evaluations += r.evaluations;
    total.max_depth_hit = total.max_depth_hit || r.max_depth_hit;
  };
  if (k.has_log()) {
    if (xb < 1) {
      add(integrate_log_endpoint<Real>(g, xb, rtol / 2));
      add(integrate_adaptive<Real>(g, xb, Real(1), rtol / 2));
    } else {
      add(integrate_log_endpoint<Real>(g, Real(1), rtol));
    }
  } else {
    std::vector<Real> cuts;
    if (xb < 1) cuts.push_back(xb);
    add(integrate_adaptive<Real>(g, Real(0), Real(1), rtol, {}, cuts));
  }
  const Real allowance = 64 * std::numeric_limits<Real>::epsilon() * (abs(total.value) + 1);
  return ball(total.value, total.error_bound + allowance);
}

}  // namespace

Interval numeric_lhs(const FamilyFunction& f, const ConjectureParams& params, const Rational& t, double tol,
                     PrecisionMode mode) {
  params.validate();
  if (t < 0) throw Error(ErrorKind::Domain, "hypothesis LHS is defined for t >= 0");
  if (t == 0) {
    const Rational f0 = *f.exact_value(0);
    if (f0 == 0) return Interval(Rational(0));
    const HypothesisKernel k = hypothesis_kernel(params);
    if (params.formulation == Formulation::C2)
      throw Error(ErrorKind::Domain, "LHS(0) diverges for the (1-x)^(n-1)/x kernel when f(0) != 0");
    return Interval(f0 * baseline_integral(k, 0));
  }
  if (mode == PrecisionMode::Extended) return numeric_lhs_impl<ExtendedReal>(f, params, t, tol);
  return numeric_lhs_impl<long double>(f, params, t, tol);
}

std::vector<Rational> vanishing_moments(const RationalPolynomial& p, const std::vector<RationalPolynomial>& weights) {
  std::vector<Rational> out;
  out.reserve(weights.size());
  for (const auto& w : weights) out.push_back((w * p).integrate(0, 1));
  return out;
}

}  // namespace habcert
