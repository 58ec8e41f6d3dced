#include "habcert/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "habcert/error.hpp"

namespace habcert {

RationalPolynomial::RationalPolynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

RationalPolynomial::RationalPolynomial(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { trim(); }

RationalPolynomial RationalPolynomial::constant(const Rational& c) { return RationalPolynomial({c}); }

RationalPolynomial RationalPolynomial::monomial(const Rational& c, unsigned k) {
  std::vector<Rational> v(k + 1, Rational(0));
  v[k] = c;
  return RationalPolynomial(std::move(v));
}

RationalPolynomial RationalPolynomial::affine(const Rational& a, const Rational& b) { return RationalPolynomial({a, b}); }

void RationalPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational RationalPolynomial::coeff(unsigned k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }

Rational RationalPolynomial::leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

Rational RationalPolynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

long double RationalPolynomial::eval(long double x) const {
  long double acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + to_long_double(*it);
  return acc;
}

RationalPolynomial RationalPolynomial::operator-() const {
  RationalPolynomial r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

RationalPolynomial& RationalPolynomial::operator+=(const RationalPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  trim();
  return *this;
}

RationalPolynomial& RationalPolynomial::operator-=(const RationalPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  trim();
  return *this;
}

RationalPolynomial& RationalPolynomial::operator*=(const RationalPolynomial& o) {
  if (is_zero() || o.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rational> out(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  coeffs_ = std::move(out);
  trim();
  return *this;
}

RationalPolynomial& RationalPolynomial::operator*=(const Rational& c) {
  for (auto& x : coeffs_) x *= c;
  trim();
  return *this;
}

RationalPolynomial RationalPolynomial::compose_affine(const RationalPolynomial& inner) const {
  if (inner.degree() > 1) throw Error(ErrorKind::InvalidArgument, "compose_affine needs an inner polynomial of degree <= 1");
  RationalPolynomial acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= inner;
    acc += constant(*it);
  }
  return acc;
}

RationalPolynomial RationalPolynomial::substitute_power(unsigned k) const {
  if (k == 0) return constant((*this)(Rational(1)));
  if (is_zero()) return {};
  std::vector<Rational> out((coeffs_.size() - 1) * k + 1, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i * k] = coeffs_[i];
  return RationalPolynomial(std::move(out));
}

RationalPolynomial RationalPolynomial::pow(unsigned k) const {
  RationalPolynomial result = constant(1), base = *this;
  while (k) {
    if (k & 1u) result *= base;
    k >>= 1u;
    if (k) base *= base;
  }
  return result;
}

RationalPolynomial RationalPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> out(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) out[k - 1] = coeffs_[k] * Rational(static_cast<long>(k));
  return RationalPolynomial(std::move(out));
}

RationalPolynomial RationalPolynomial::antiderivative() const {
  if (is_zero()) return {};
  std::vector<Rational> out(coeffs_.size() + 1, Rational(0));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) out[k + 1] = coeffs_[k] / Rational(static_cast<long>(k + 1));
  return RationalPolynomial(std::move(out));
}

Rational RationalPolynomial::integrate(const Rational& a, const Rational& b) const {
  RationalPolynomial F = antiderivative();
  return F(b) - F(a);
}

RationalPolynomial RationalPolynomial::primitive() const {
  if (is_zero()) return {};
  BigInt den_lcm = 1;
  for (const auto& c : coeffs_) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  BigInt num_gcd = 0;
  for (const auto& c : coeffs_) {
    BigInt n = c.get_num() * (den_lcm / c.get_den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
  }
  Rational scale = make_rational(den_lcm, num_gcd);
  if (leading() < 0) scale = -scale;
  return *this * scale;
}

RationalPolynomial RationalPolynomial::monic() const {
  if (is_zero()) return {};
  return *this * (Rational(1) / leading());
}

std::string RationalPolynomial::to_string(char var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rational& c = coeffs_[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    bool unit = mag == 1;
    if (!unit || k == 0) os << habcert::to_string(mag);
    if (k >= 1) {
      if (!unit) os << "*";
      os << var;
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

RationalPolynomial poly_arith(const RationalPolynomial& a, const RationalPolynomial& b, PolyOp op) {
  switch (op) {
    case PolyOp::Add: return a + b;
    case PolyOp::Sub: return a - b;
    case PolyOp::Mul: return a * b;
    case PolyOp::Scale: return a * b.coeff(0);
    case PolyOp::ComposeAffine: return a.compose_affine(b);
  }
  return {};
}

DivMod divmod(const RationalPolynomial& a, const RationalPolynomial& b) {
  if (b.is_zero()) throw Error(ErrorKind::Domain, "polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  int db = b.degree();
  if (a.degree() < db) return {RationalPolynomial{}, a};
  std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
  Rational lead = b.leading();
  for (int k = a.degree(); k >= db; --k) {
    Rational c = rem[static_cast<std::size_t>(k)] / lead;
    quo[static_cast<std::size_t>(k - db)] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k - db + j)] -= c * b.coeffs()[static_cast<std::size_t>(j)];
  }
  return {RationalPolynomial(std::move(quo)), RationalPolynomial(std::move(rem))};
}

RationalPolynomial gcd(RationalPolynomial a, RationalPolynomial b) {
  while (!b.is_zero()) {
    RationalPolynomial r = divmod(a, b).remainder;
    a = std::move(b);
    b = r.primitive();
  }
  return a.monic();
}

std::vector<SquareFreeFactor> square_free_decomposition(const RationalPolynomial& p) {
  if (p.is_zero()) throw Error(ErrorKind::Domain, "square-free decomposition of the zero polynomial");
  std::vector<SquareFreeFactor> out;
  if (p.degree() == 0) return out;
  RationalPolynomial f = p.monic();
  RationalPolynomial fp = f.derivative();
  RationalPolynomial a = gcd(f, fp);
  RationalPolynomial b = divmod(f, a).quotient;
  RationalPolynomial c = divmod(fp, a).quotient;
  RationalPolynomial d = c - b.derivative();
  unsigned i = 1;
  while (b.degree() > 0) {
    RationalPolynomial g = gcd(b, d);
    if (g.degree() > 0) out.push_back({g.monic(), i});
    b = divmod(b, g).quotient;
    c = divmod(d, g).quotient;
    d = c - b.derivative();
    ++i;
  }
  return out;
}

}  // namespace habcert
