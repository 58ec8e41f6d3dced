#include "habcert/conclusion.hpp"

#include <cmath>

#include "habcert/error.hpp"
#include "habcert/quadrature.hpp"

namespace habcert {

const char* to_string(ConclusionVerdict v) {
  switch (v) {
    case ConclusionVerdict::Violated: return "VIOLATED";
    case ConclusionVerdict::Satisfied: return "SATISFIED";
    case ConclusionVerdict::EqualityWithinTol: return "EQUALITY_WITHIN_TOL";
    case ConclusionVerdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

std::string RhsBound::closed_form() const { return to_string(coefficient) + "*pi"; }

RhsBound rhs_bound(const ConjectureParams& params, double width) {
  if (!(width >= 1e-30)) throw Error(ErrorKind::InvalidArgument, "rhs width must be >= 1e-30");
  RhsBound b;
  b.params = params;
  b.coefficient = rhs_coefficient(params);
  b.enclosure = Interval(b.coefficient) * pi_interval();
  return b;
}

namespace {

struct ClosedTail {
  Rational scale;
  unsigned power;
};

std::optional<ClosedTail> closed_tail(const ConjectureParams& params) {
  switch (params.formulation) {
    case Formulation::C1:
      if (params.exponent == 4) return ClosedTail{6, 4};
      break;
    case Formulation::C2:
      if (params.exponent == 2) return ClosedTail{6, 2};
      break;
    case Formulation::C3:
      if (params.exponent == 2) return ClosedTail{12, 1};
      break;
  }
  return std::nullopt;
}

// Decay rate d with scale·t^power·w(t) <= scale·t^(−1−d) at large t.
long double tail_decay(unsigned power, const ConjectureParams& params) {
  const long double e = to_long_double(params.exponent);
  switch (params.formulation) {
    case Formulation::C1: return 2 * e - power;
    case Formulation::C2: return 2 * e - power;
    case Formulation::C3: return 2 * e - power - 1;
  }
  return 0;
}

template <class Real>
QuadratureResult<Real> pure_power_integral(const Rational& scale, unsigned power, const ConjectureParams& params,
                                           Real a, Real b, Real tol) {
  const ConclusionWeight w = conclusion_weight(params);
  const Real c = to_real<Real>(scale);
  std::function<Real(Real)> g = [&](Real t) { return c * int_pow(t, power) * w(t); };
  std::vector<Real> cuts;
  for (Real x = a * 2; x < b; x *= 2) cuts.push_back(x);
  return integrate_adaptive<Real>(g, a, b, tol, {}, cuts);
}

template <class Real>
TailEvaluation tail_fallback(const Rational& scale, unsigned power, const ConjectureParams& params, const Rational& T,
                             double tol) {
  const long double d = tail_decay(power, params);
  if (!(d > 0)) throw Error(ErrorKind::Domain, "conclusion integral diverges for this power and exponent");
  if (T <= 0) throw Error(ErrorKind::InvalidArgument, "tail start must be positive");
  const long double c = std::fabs(to_long_double(scale));
  Rational X = T < 1 ? Rational(1) : T;
  long double remainder = 0;
  for (int k = 0; k < 400; ++k) {
    remainder = c * std::pow(to_long_double(X), -d) / d * (1 + 1e-12L);
    if (remainder <= tol / 2) break;
    X *= 2;
  }
  if (remainder > tol / 2) throw Error(ErrorKind::Domain, "tail decays too slowly to reach the tolerance");
  TailEvaluation out;
  out.cutoff = X;
  auto q = pure_power_integral<Real>(scale, power, params, to_real<Real>(T), to_real<Real>(X), Real(tol / 2));
  using std::abs;
  Real allowance = 64 * std::numeric_limits<Real>::epsilon() * (abs(q.value) + 1);
  // The discarded [X, ∞) piece has the sign of scale.
  Interval rest = scale >= 0 ? Interval::from_bounds(0, remainder) : Interval::from_bounds(-remainder, 0);
  out.enclosure = ball(q.value, q.error_bound + allowance) + rest;
  return out;
}

}  // namespace

Interval tail_closed_form(const ConjectureParams& params, const Rational& T) {
  if (T < 0) throw Error(ErrorKind::InvalidArgument, "tail start must be nonnegative");
  if (!closed_tail(params)) throw Error(ErrorKind::NotApplicable, "closed-form tail needs lambda = 4 or alpha = 2");
  const Interval& pi = pi_interval();
  const Interval half_pi = pi * Interval(Rational(1, 2));
  const Interval t(T);
  const Interval t2 = t.pow(2), t4 = t.pow(4);
  switch (params.formulation) {
    case Formulation::C2: return Interval(Rational(3)) * (half_pi - t2.atan());
    case Formulation::C1:
      return Interval(Rational(3, 4)) *
             (half_pi - t4.atan() + t4 / (Interval(Rational(1)) + t4.pow(2)));
    case Formulation::C3: {
      Interval v = Interval(Rational(6)) * pi - Interval(Rational(12)) * t2.atan();
      if (T == 0) return v;
      return v - Interval(Rational(6)) * t2 * (Interval(Rational(1)) / t4).log1p();
    }
  }
  return Interval();
}

TailEvaluation tail_integral(const Rational& scale, unsigned power, const ConjectureParams& params, const Rational& T,
                             double tol, PrecisionMode mode) {
  params.validate();
  if (auto pt = closed_tail(params); pt && pt->power == power) {
    TailEvaluation out;
    out.closed_form = true;
    out.cutoff = T;
    out.enclosure = Interval(scale / pt->scale) * tail_closed_form(params, T);
    return out;
  }
  if (mode == PrecisionMode::Extended) return tail_fallback<ExtendedReal>(scale, power, params, T, tol);
  return tail_fallback<long double>(scale, power, params, T, tol);
}

namespace {

Rational default_truncation(const AlgebraicConstant& knot) {
  Rational T = 10;
  while (knot.compare(T) > 0) T += 1;
  return T;
}

long double l1_norm(const RationalPolynomial& p) {
  long double s = 0;
  for (const auto& c : p.coeffs()) s += std::fabs(to_long_double(c));
  return s;
}

template <class Real>
ConclusionEvaluation conclusion_impl(const FamilyFunction& f, const ConjectureParams& params, double tol,
                                     const Rational& T) {
  using std::abs;
  const NumericFamily<Real> nf(f);
  const ConclusionWeight w = conclusion_weight(params);
  std::function<Real(Real)> g = [&](Real t) { return nf(t) * w(t); };
  const Real piece_tol = Real(tol / 4);

  ConclusionEvaluation out;
  out.truncation = T;
  QuadratureResult<Real> head = params.formulation == Formulation::C3
                                    ? integrate_log_endpoint<Real>(g, nf.knot, piece_tol)
                                    : integrate_adaptive<Real>(g, Real(0), nf.knot, piece_tol);
  QuadratureResult<Real> body = integrate_adaptive<Real>(g, nf.knot, to_real<Real>(T), piece_tol);
  TailEvaluation tail = tail_integral(f.scale(), f.power(), params, T, tol / 4,
                                      std::is_same_v<Real, ExtendedReal> ? PrecisionMode::Extended : PrecisionMode::Standard);

  const Real value = head.value + body.value;
  const Real quad = head.error_bound + body.error_bound;
  // The knot and ε enter as floating constants; their representation error
  // moves each value by a few ulps times the perturbation's size.
  const long double eps_rel = static_cast<long double>(std::numeric_limits<Real>::epsilon());
  const long double constants =
      16 * eps_rel * (std::fabs(to_ld(head.value)) + std::fabs(to_ld(body.value)) + 1) *
      (1 + std::fabs(to_long_double(f.epsilon())) * (l1_norm(f.perturbation()) + l1_norm(f.perturbation().derivative())));

  out.enclosure = ball(value, quad + Real(constants)) + tail.enclosure;
  out.budget.quadrature = static_cast<double>(to_ld(quad));
  out.budget.tail = static_cast<double>(tail.enclosure.width() / 2);
  out.budget.constants = static_cast<double>(constants);
  out.tail_closed_form = tail.closed_form;
  out.evaluations = head.evaluations + body.evaluations;
  out.achieved = !head.max_depth_hit && !body.max_depth_hit && out.enclosure.width() <= tol;
  return out;
}

}  // namespace

ConclusionEvaluation conclusion_lhs(const FamilyFunction& f, const ConjectureParams& params, double tol,
                                    PrecisionMode mode, std::optional<Rational> truncation) {
  params.validate();
  if (!(tol > 0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
  if (f.role() != role_for(params.formulation))
    throw Error(ErrorKind::RoleMismatch, std::string("conjecture ") + to_string(params.formulation) + " takes role " +
                                             to_string(role_for(params.formulation)));
  const Rational T = truncation ? *truncation : default_truncation(f.knot());
  if (f.knot().compare(T) > 0) throw Error(ErrorKind::InvalidArgument, "truncation point must lie beyond the knot");
  if (mode == PrecisionMode::Extended) return conclusion_impl<ExtendedReal>(f, params, tol, T);
  return conclusion_impl<long double>(f, params, tol, T);
}

ViolationReport violation_report(const FamilyFunction& f, const ConjectureParams& params, double tol,
                                 PrecisionMode mode) {
  ViolationReport r;
  r.params = params;
  r.epsilon = f.epsilon();
  r.tolerance = tol;
  r.lhs = conclusion_lhs(f, params, tol, mode);
  r.rhs = rhs_bound(params);
  r.margin = r.lhs.enclosure - r.rhs.enclosure;
  r.total_budget = r.lhs.budget.total() + static_cast<double>(r.rhs.enclosure.width());
  const Rational zero(0);
  if (!r.lhs.achieved) r.verdict = ConclusionVerdict::Inconclusive;
  else if (r.margin.lower() > 0 && r.margin.lower() > 10 * r.total_budget) r.verdict = ConclusionVerdict::Violated;
  else if (r.margin.negative()) r.verdict = ConclusionVerdict::Satisfied;
  else if (r.margin.contains(zero) && r.margin.width() < tol) r.verdict = ConclusionVerdict::EqualityWithinTol;
  else r.verdict = ConclusionVerdict::Inconclusive;
  return r;
}

LinearityCheck epsilon_linearity_check(const FamilyFunction& f, const ConjectureParams& params,
                                       const std::vector<Rational>& eps_list, double tol, PrecisionMode mode) {
  if (eps_list.empty()) throw Error(ErrorKind::InvalidArgument, "epsilon list is empty");
  LinearityCheck out;
  for (const auto& e : eps_list) {
    if (e == 0) throw Error(ErrorKind::InvalidArgument, "epsilon-linearity needs nonzero epsilon values");
    ViolationReport r = violation_report(f.with_epsilon(e), params, tol, mode);
    out.epsilons.push_back(e);
    out.margins.push_back(r.margin);
    out.ratios.push_back(r.margin.mid() / to_long_double(e));
  }
  const long double r0 = out.ratios.front();
  const long double scale = r0 != 0 ? std::fabs(r0) : 1;
  const long double w0 = out.margins.front().width() / 2 / std::fabs(to_long_double(out.epsilons.front()));
  for (std::size_t i = 1; i < out.ratios.size(); ++i) {
    out.max_relative_deviation = std::max(out.max_relative_deviation, std::fabs(out.ratios[i] - r0) / scale);
    long double wi = out.margins[i].width() / 2 / std::fabs(to_long_double(out.epsilons[i]));
    out.error_allowance = std::max(out.error_allowance, (wi + w0) / scale);
  }
  return out;
}

}  // namespace habcert
