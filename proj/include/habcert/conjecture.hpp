#pragma once

#include <cmath>
#include <string>

#include "habcert/family.hpp"
#include "habcert/rational.hpp"

namespace habcert {

enum class Formulation { C1, C2, C3 };

const char* to_string(Formulation f);
/// Accepts "1", "2", "3" or "C1", "C2", "C3".
Formulation parse_formulation(const std::string& s);

/// exponent is λ for C1 and α for C2/C3.
struct ConjectureParams {
  Formulation formulation = Formulation::C2;
  unsigned n = 2;
  Rational exponent = 2;

  /// n = 2 with λ = 4 for C1 and α = 2 otherwise.
  static ConjectureParams standard(Formulation f);
  /// Throws Error(InvalidArgument): exponent must be positive, n >= 1, and
  /// n >= 2 for C1.
  void validate() const;
  /// Exponent of t on the right of the hypothesis: α − 1 for C3, else the exponent.
  Rational hypothesis_exponent() const;
  bool operator==(const ConjectureParams&) const = default;
};

/// C1 with λ maps to C2 (or C3) with α = λ/2 and the same n.
ConjectureParams to_alpha_form(const ConjectureParams& c1, Formulation target = Formulation::C2);
ConjectureParams to_lambda_form(const ConjectureParams& alpha_form);

/// Function role each formulation takes: C1 ↔ S, C2 ↔ h, C3 ↔ q.
Role role_for(Formulation f);
Formulation formulation_for(Role r);

/// K(x) = poly(x)·x^x_shift + log_coefficient·ln x on (0, 1].
struct HypothesisKernel {
  Formulation formulation = Formulation::C2;
  RationalPolynomial poly;
  int x_shift = 0;
  Rational log_coefficient = 0;

  bool has_log() const { return log_coefficient != 0; }
  std::string to_string() const;

  template <class Real>
  Real operator()(const Real& x) const {
    using std::log;
    Real acc = 0;
    for (auto it = poly.coeffs().rbegin(); it != poly.coeffs().rend(); ++it) acc = acc * x + to_real<Real>(*it);
    if (x_shift < 0) acc /= int_pow(x, static_cast<unsigned>(-x_shift));
    if (x_shift > 0) acc *= int_pow(x, static_cast<unsigned>(x_shift));
    if (has_log()) acc += to_real<Real>(log_coefficient) * log(x);
    return acc;
  }
};

/// C1: (1 − x²)^(n−2)·x.  C2: (1 − x)^(n−1)/x.
/// C3: K_n(x) = ∫ₓ¹ (1 − y)^(n−1) dy/y = −ln x + Σ_{j=1}^{n−1} C(n−1, j)(−1)^j (1 − x^j)/j.
HypothesisKernel hypothesis_kernel(const ConjectureParams& params);

/// Conclusion weights: C1 t^(2λ−1)/(1 + t^(2λ))², C2 1/(t(1 + t^(2α))),
/// C3 ln(1 + t^(−2α)).
struct ConclusionWeight {
  Formulation formulation = Formulation::C2;
  Rational exponent = 2;

  std::string to_string() const;

  template <class Real>
  Real operator()(const Real& t) const {
    using std::log1p;
    using std::pow;
    const Rational two_e = exponent * 2;
    Real pw;  // t^(2·exponent)
    if (two_e.get_den() == 1 && two_e.get_num().fits_uint_p())
      pw = int_pow(t, static_cast<unsigned>(two_e.get_num().get_ui()));
    else
      pw = pow(t, to_real<Real>(two_e));
    switch (formulation) {
      case Formulation::C1: return pw / (t * (1 + pw) * (1 + pw));
      case Formulation::C2: return 1 / (t * (1 + pw));
      case Formulation::C3: return log1p(1 / pw);
    }
    return Real(0);
  }
};

ConclusionWeight conclusion_weight(const ConjectureParams& params);

/// Rational r with RHS = r·π.
Rational rhs_coefficient(const ConjectureParams& params);

}  // namespace habcert
