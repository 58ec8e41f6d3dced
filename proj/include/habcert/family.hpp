#pragma once

#include <optional>
#include <string>
#include <vector>

#include "habcert/algebraic.hpp"
#include "habcert/numeric.hpp"
#include "habcert/polynomial.hpp"
#include "habcert/roots.hpp"

namespace habcert {

/// Which member of the counterexample chain a function plays: q (continuous
/// form), h = ∫q (nondecreasing form), S (log-convex form).
enum class Role { Q, H, S };
enum class Normalization { Tau, Theta };

const char* to_string(Role r);
const char* to_string(Normalization n);
Role parse_role(const std::string& s);
Normalization parse_normalization(const std::string& s);

struct FamilyParams {
  Rational epsilon;
  /// 0 < ε <= 1; anything else is exploratory.
  bool conformant() const { return epsilon > 0 && epsilon <= 1; }
};

/// scale·x^power·(1 − ε·perturbation(z)) on [0, knot), scale·x^power beyond,
/// where z = (knot − x)/knot (Tau) or z = x/knot (Theta). The perturbation is
/// kept in z so its coefficients stay rational.
class FamilyFunction {
 public:
  FamilyFunction(Role role, Rational scale, unsigned power, AlgebraicConstant knot, Normalization normalization,
                 RationalPolynomial perturbation, Rational epsilon);

  Role role() const { return role_; }
  const Rational& scale() const { return scale_; }
  unsigned power() const { return power_; }
  const AlgebraicConstant& knot() const { return knot_; }
  Normalization normalization() const { return normalization_; }
  const RationalPolynomial& perturbation() const { return perturbation_; }
  const Rational& epsilon() const { return epsilon_; }
  bool conformant() const { return FamilyParams{epsilon_}.conformant(); }

  FamilyFunction with_epsilon(const Rational& eps) const;
  FamilyFunction with_role(Role r) const;

  /// Normalized coordinate of the knot (0 for Tau, 1 for Theta) and of x = 0.
  Rational knot_coordinate() const;
  Rational origin_coordinate() const;
  /// 1 − ε·perturbation(z).
  RationalPolynomial factor() const;
  /// Perturbation as a function of w = x/knot: Tau gives P(1 − w).
  RationalPolynomial perturbation_in_ratio() const;

  /// Exact value where the branch and the value are rational (x = 0, or x
  /// provably beyond the knot).
  std::optional<Rational> exact_value(const Rational& x) const;

  bool operator==(const FamilyFunction& o) const;

 private:
  Role role_;
  Rational scale_;
  unsigned power_;
  AlgebraicConstant knot_;
  Normalization normalization_;
  RationalPolynomial perturbation_;
  Rational epsilon_;
};

/// Floating evaluation for quadrature; the knot is the midpoint of a
/// sub-ulp enclosure.
template <class Real>
struct NumericFamily {
  Real scale, knot, epsilon;
  unsigned power = 0;
  Normalization normalization = Normalization::Tau;
  std::vector<Real> perturbation;

  explicit NumericFamily(const FamilyFunction& f)
      : scale(to_real<Real>(f.scale())),
        knot(midpoint_real<Real>(f.knot().enclose(1e-45))),
        epsilon(to_real<Real>(f.epsilon())),
        power(f.power()),
        normalization(f.normalization()) {
    for (const auto& c : f.perturbation().coeffs()) perturbation.push_back(to_real<Real>(c));
  }

  Real coordinate(const Real& x) const {
    if (normalization == Normalization::Tau) return Real((knot - x) / knot);
    return Real(x / knot);
  }
  Real perturbation_at(const Real& z) const {
    Real acc = 0;
    for (auto it = perturbation.rbegin(); it != perturbation.rend(); ++it) acc = acc * z + *it;
    return acc;
  }
  Real pure(const Real& x) const { return scale * int_pow(x, power); }
  Real operator()(const Real& x) const {
    Real base = pure(x);
    if (x < knot) return base * (1 - epsilon * perturbation_at(coordinate(x)));
    return base;
  }
};

RationalPolynomial perturbation_R();  // (21τ³ − 34τ² + 16τ − 2)τ
RationalPolynomial perturbation_U();  // (7τ² − 8τ + 2)τ²
RationalPolynomial perturbation_V();  // (7θ² − 3)(θ² − 1)³/3

FamilyFunction build_q(const FamilyParams& params);
FamilyFunction build_h(const FamilyParams& params);
FamilyFunction build_S(const FamilyParams& params);

/// f' as a family function: scale·power, power − 1, perturbation
/// P − ((1 − τ)/p)·P′ (Tau) or P + (θ/p)·P′ (Theta). Role is preserved.
FamilyFunction differentiate(const FamilyFunction& f);
/// ∫₀ˣ f with zero integration constant. Throws Error(Domain) if the result is
/// not a pure power beyond the knot.
FamilyFunction integrate_from_zero(const FamilyFunction& f);

/// h → q. Throws Error(RoleMismatch) unless role H.
FamilyFunction differentiate_h(const FamilyFunction& h);
/// q → h with h(0) = 0. Throws Error(RoleMismatch) unless role Q.
FamilyFunction integrate_q_to_h(const FamilyFunction& q);
/// h → S(x) = ∫₀ˣ 4h(t²)/t dt; knot becomes √knot. Role H, Tau only.
FamilyFunction lift_h_to_S(const FamilyFunction& h);

/// Enclosure of f(x) of width <= width. x >= 0.
Interval eval_function(const FamilyFunction& f, const Rational& x, double width = 1e-15);

struct ShapeCheck {
  bool passed = false;
  bool required = false;
  std::optional<SignCertificate> certificate;
  std::string note;
};

struct ShapeReport {
  Role role = Role::Q;
  bool conformant = true;
  ShapeCheck continuous;
  ShapeCheck nonnegative;
  ShapeCheck nondecreasing;
  ShapeCheck log_convex;
  /// Midpoint convexity of f(e^y) on a grid, informational cross-check.
  bool sampled_convexity = false;

  bool admissible() const;
};

/// Requirements by role: q continuous and nonnegative; h additionally
/// nondecreasing; S additionally convex in log x. Other checks are reported
/// but not required.
ShapeReport check_shape(const FamilyFunction& f);

/// Midpoint convexity of y ↦ f(e^y) at `points` grid points spanning
/// [knot/1000, 4·knot].
bool sampled_log_convexity(const FamilyFunction& f, int points = 2001);

}  // namespace habcert
