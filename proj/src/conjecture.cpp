#include "habcert/conjecture.hpp"

#include "habcert/error.hpp"

namespace habcert {

const char* to_string(Formulation f) {
  switch (f) {
    case Formulation::C1: return "C1";
    case Formulation::C2: return "C2";
    case Formulation::C3: return "C3";
  }
  return "?";
}

Formulation parse_formulation(const std::string& s) {
  if (s == "1" || s == "C1") return Formulation::C1;
  if (s == "2" || s == "C2") return Formulation::C2;
  if (s == "3" || s == "C3") return Formulation::C3;
  throw Error(ErrorKind::Parse, "unknown conjecture '" + s + "' (expected 1, 2 or 3)");
}

ConjectureParams ConjectureParams::standard(Formulation f) {
  return {f, 2, f == Formulation::C1 ? Rational(4) : Rational(2)};
}

void ConjectureParams::validate() const {
  if (exponent <= 0) throw Error(ErrorKind::InvalidArgument, "conjecture exponent must be positive");
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be at least 1");
  if (formulation == Formulation::C1 && n < 2) throw Error(ErrorKind::InvalidArgument, "conjecture 1 requires n >= 2");
}

Rational ConjectureParams::hypothesis_exponent() const {
  return formulation == Formulation::C3 ? Rational(exponent - 1) : exponent;
}

ConjectureParams to_alpha_form(const ConjectureParams& c1, Formulation target) {
  if (c1.formulation != Formulation::C1) throw Error(ErrorKind::InvalidArgument, "to_alpha_form expects a C1 instance");
  if (target == Formulation::C1) throw Error(ErrorKind::InvalidArgument, "target must be C2 or C3");
  return {target, c1.n, c1.exponent / 2};
}

ConjectureParams to_lambda_form(const ConjectureParams& p) {
  if (p.formulation == Formulation::C1) throw Error(ErrorKind::InvalidArgument, "already in lambda form");
  return {Formulation::C1, p.n, p.exponent * 2};
}

Role role_for(Formulation f) {
  switch (f) {
    case Formulation::C1: return Role::S;
    case Formulation::C2: return Role::H;
    case Formulation::C3: return Role::Q;
  }
  return Role::H;
}

Formulation formulation_for(Role r) {
  switch (r) {
    case Role::S: return Formulation::C1;
    case Role::H: return Formulation::C2;
    case Role::Q: return Formulation::C3;
  }
  return Formulation::C2;
}

HypothesisKernel hypothesis_kernel(const ConjectureParams& params) {
  params.validate();
  HypothesisKernel k;
  k.formulation = params.formulation;
  const unsigned n = params.n;
  switch (params.formulation) {
    case Formulation::C1:
      k.poly = RationalPolynomial({1, 0, -1}).pow(n - 2) * RationalPolynomial::monomial(1, 1);
      break;
    case Formulation::C2:
      k.poly = RationalPolynomial::affine(1, -1).pow(n - 1);
      k.x_shift = -1;
      break;
    case Formulation::C3: {
      k.log_coefficient = -1;
      BigInt binom = 1;
      for (unsigned j = 1; j < n; ++j) {
        binom = binom * (n - j) / j;  // C(n−1, j)
        Rational c = Rational(binom) / j;
        if (j % 2) c = -c;
        k.poly += (RationalPolynomial::constant(1) - RationalPolynomial::monomial(1, j)) * c;
      }
      break;
    }
  }
  return k;
}

std::string HypothesisKernel::to_string() const {
  std::string s = poly.is_zero() ? "" : "(" + poly.to_string() + ")";
  if (x_shift != 0 && !s.empty()) s += "*x^" + std::to_string(x_shift);
  if (has_log()) s += (s.empty() ? "" : " + ") + habcert::to_string(log_coefficient) + "*ln(x)";
  return s.empty() ? "0" : s;
}

ConclusionWeight conclusion_weight(const ConjectureParams& params) {
  params.validate();
  return {params.formulation, params.exponent};
}

std::string ConclusionWeight::to_string() const {
  const std::string e2 = habcert::to_string(Rational(exponent * 2));
  switch (formulation) {
    case Formulation::C1: return "t^(" + e2 + "-1)/(1+t^" + e2 + ")^2";
    case Formulation::C2: return "1/(t*(1+t^" + e2 + "))";
    case Formulation::C3: return "ln(1+t^(-" + e2 + "))";
  }
  return "?";
}

Rational rhs_coefficient(const ConjectureParams& params) {
  params.validate();
  const Rational& e = params.exponent;
  Rational product = 1;
  for (unsigned k = 1; k < params.n; ++k)
    product *= params.formulation == Formulation::C1 ? Rational(1 + e / (2 * k)) : Rational(1 + e / k);
  switch (params.formulation) {
    case Formulation::C1: return Rational(params.n - 1) / (2 * e) * product;
    case Formulation::C2: return product / 2;
    case Formulation::C3: return e * product;
  }
  return 0;
}

}  // namespace habcert
