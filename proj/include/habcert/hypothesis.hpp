#pragma once

#include <optional>
#include <string>
#include <vector>

#include "habcert/conjecture.hpp"
#include "habcert/family.hpp"
#include "habcert/interval.hpp"
#include "habcert/numeric.hpp"
#include "habcert/roots.hpp"

namespace habcert {

/// scale·knot^knot_power·s^s_power with s = t/knot.
struct Prefactor {
  Rational scale = 1;
  unsigned knot_power = 0;
  int s_power = 0;

  Interval evaluate(const Interval& knot, const Interval& s) const;
  std::string to_string() const;
};

/// LHS(t; ε) = baseline_coefficient·t^baseline_power − ε·M(t), with
///   M(t) = inner_prefactor(s)·inner(s)          for t = knot·s, 0 <= s <= 1,
///   M(t) = outer_prefactor(s)·outer(u)          for t > knot, u = knot/t.
/// When outer has only the terms u^(p−1) and u^p, the outer margin reads
/// knot-scaled (outer_A − outer_B/t); both are reported with prefactors stripped.
struct HypothesisMargin {
  ConjectureParams params;
  AlgebraicConstant knot = knot_x0();
  Rational baseline_coefficient;
  Rational baseline_power;
  bool baseline_exact = false;
  RationalPolynomial inner;
  Prefactor inner_prefactor;
  RationalPolynomial outer;
  Prefactor outer_prefactor;
  Rational outer_A;
  Rational outer_B;
  bool outer_is_affine = true;
  bool via_fubini = false;

  /// Enclosure of M(t), t >= 0.
  Interval evaluate(const Rational& t, double width = 1e-30) const;
  /// Enclosure of the symbolic LHS(t; ε).
  Interval lhs(const Rational& t, const Rational& epsilon, double width = 1e-30) const;
};

/// Exact margin for C1/C2 (polynomial kernels) and C3 (baseline via the log
/// kernel, margin via the Fubini reduction to C2). Throws
/// Error(RoleMismatch) when f's role does not match the formulation and
/// Error(NotApplicable) when the unperturbed tail is not baseline-exact.
HypothesisMargin symbolic_margin(const FamilyFunction& f, const ConjectureParams& params);

/// C3 margin of q = h′ from the C2 margin of h: t·LHS₃(t) = LHS₂(t).
/// Throws Error(Domain) when h(0) ≠ 0.
HypothesisMargin fubini_reduction(const FamilyFunction& h, const ConjectureParams& c3);

enum class HypothesisVerdict { Certified, Refuted, NotApplicable };
const char* to_string(HypothesisVerdict v);

struct MarginCertificate {
  ConjectureParams params;
  Rational epsilon;
  HypothesisVerdict verdict = HypothesisVerdict::NotApplicable;
  std::optional<HypothesisMargin> margin;
  /// Signs are certified for sign(ε)·inner on s ∈ [0, 1] and sign(ε)·outer on u ∈ [0, 1].
  std::optional<SignCertificate> inner;
  std::optional<SignCertificate> outer;
  /// A point t where LHS(t) > t^exponent, enclosed.
  std::optional<Interval> witness_t;
  std::optional<Rational> witness_coordinate;
  bool witness_in_outer = false;
  std::string reason;
  /// C3 only: max |t·LHS₃(t) − LHS₂(t)| over the numeric spot checks.
  std::optional<double> fubini_deviation;
};

MarginCertificate certify_hypothesis(const FamilyFunction& f, const ConjectureParams& params);

/// Direct quadrature of ∫₀¹ K(x)·f(tx) dx; width of the result is the
/// quadrature bound plus a representation allowance, targeting `tol`.
Interval numeric_lhs(const FamilyFunction& f, const ConjectureParams& params, const Rational& t, double tol = 1e-12,
                     PrecisionMode mode = PrecisionMode::Standard);

/// ∫₀¹ w_i(z)·p(z) dz for each weight.
std::vector<Rational> vanishing_moments(const RationalPolynomial& p, const std::vector<RationalPolynomial>& weights);

}  // namespace habcert
