#include "habcert/algebraic.hpp"

#include <cmath>
#include <numeric>

#include "habcert/error.hpp"

namespace habcert {

Rational rational_from_double(double v) {
  if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "non-finite double");
  Rational r(v);
  r.canonicalize();
  return r;
}

namespace {

// Rational roots by the rational root theorem, only for modest coefficients.
std::optional<Rational> rational_root_in(const RationalPolynomial& p, const Rational& lo, const Rational& hi) {
  RationalPolynomial q = p.primitive();
  int shift = 0;
  while (shift <= q.degree() && q.coeff(static_cast<unsigned>(shift)) == 0) ++shift;
  if (shift > 0 && lo <= 0 && hi >= 0) return Rational(0);
  BigInt a0 = abs(q.coeff(static_cast<unsigned>(shift)).get_num());
  BigInt an = abs(q.leading().get_num());
  const BigInt limit("1000000000000", 10);
  if (a0 > limit || an > limit) return std::nullopt;
  auto divisors = [](const BigInt& n) {
    std::vector<BigInt> out;
    for (BigInt d = 1; d * d <= n; ++d)
      if (n % d == 0) {
        out.push_back(d);
        if (d * d != n) out.push_back(n / d);
      }
    return out;
  };
  for (const auto& num : divisors(a0))
    for (const auto& den : divisors(an))
      for (int s : {1, -1}) {
        Rational cand = make_rational(BigInt(num * s), den);
        if (cand >= lo && cand <= hi && q(cand) == 0) return cand;
      }
  return std::nullopt;
}

}  // namespace

AlgebraicConstant::AlgebraicConstant(const RationalPolynomial& defining, const Rational& lo, const Rational& hi)
    : defining_(defining.primitive()), bracket_lo_(lo), bracket_hi_(hi), cache_(std::make_shared<Cache>()) {
  if (defining.is_zero()) throw Error(ErrorKind::Domain, "defining polynomial is zero");
  if (!(lo < hi)) throw Error(ErrorKind::InvalidArgument, "constant bracket needs lo < hi");
  auto roots = isolate_roots(defining_, lo, hi);
  if (roots.size() != 1)
    throw Error(ErrorKind::Domain, "defining polynomial has " + std::to_string(roots.size()) +
                                       " roots in the bracket; exactly one required");
  cache_->root = roots.front();
  if (cache_->root.exact) exact_ = cache_->root.lo;
  else if (auto r = rational_root_in(defining_, cache_->root.lo, cache_->root.hi)) exact_ = *r;
  if (exact_) cache_->root = RootEnclosure{*exact_, *exact_, cache_->root.multiplicity, true, cache_->root.factor};
}

std::pair<Rational, Rational> AlgebraicConstant::bracket(const Rational& width) const {
  std::lock_guard<std::mutex> lock(cache_->mutex);
  if (cache_->root.width() > width) cache_->root.refine(width);
  return {cache_->root.lo, cache_->root.hi};
}

Interval AlgebraicConstant::enclose(double width) const {
  if (!(width > 0)) throw Error(ErrorKind::InvalidArgument, "enclosure width must be positive");
  // Half the budget goes to the rational bracket, the rest absorbs rounding.
  auto [lo, hi] = bracket(rational_from_double(width) / 2);
  return Interval(lo, hi);
}

long double AlgebraicConstant::approx() const { return enclose(1e-30).mid(); }

int AlgebraicConstant::compare(const Rational& x) const {
  if (exact_) return sign(Rational(*exact_ - x));
  if (x < bracket_lo_) return 1;
  if (x > bracket_hi_) return -1;
  if (defining_(x) == 0) return 0;  // the unique root in the bracket
  Rational width = bracket_hi_ - bracket_lo_;
  for (;;) {
    auto [lo, hi] = bracket(width);
    if (x <= lo) return 1;
    if (x >= hi) return -1;
    width /= 1024;
  }
}

AlgebraicConstant AlgebraicConstant::sqrt() const {
  Interval enc = enclose(1e-30);
  if (!enc.positive()) throw Error(ErrorKind::Domain, "sqrt of a constant not provably positive");
  Interval root = enc.sqrt().inflate(1e-25L);
  return AlgebraicConstant(defining_.substitute_power(2), root.lower_rational(), root.upper_rational());
}

bool AlgebraicConstant::same_value(const AlgebraicConstant& other) const {
  if (exact_ && other.exact_) return *exact_ == *other.exact_;
  if (defining_ != other.defining_) {
    // Compare numerically, then confirm via a shared defining polynomial.
    RationalPolynomial g = gcd(defining_, other.defining_);
    if (g.degree() <= 0) return false;
    AlgebraicConstant a(g, bracket_lo_, bracket_hi_);
    return a.same_value(other) && AlgebraicConstant(g, other.bracket_lo_, other.bracket_hi_).same_value(*this);
  }
  Rational lo = std::max(bracket_lo_, other.bracket_lo_);
  Rational hi = std::min(bracket_hi_, other.bracket_hi_);
  if (lo > hi) return false;
  if (lo == hi) return defining_(lo) == 0;
  return !isolate_roots(defining_, lo, hi).empty();
}

AlgebraicConstant make_constant(const RationalPolynomial& defining, const Rational& lo, const Rational& hi) {
  return AlgebraicConstant(defining, lo, hi);
}

std::variant<Rational, AlgebraicConstant> exact_power(const AlgebraicConstant& c, unsigned k) {
  if (k == 0) throw Error(ErrorKind::InvalidArgument, "exact_power needs k >= 1");
  if (c.exact_value()) return pow(*c.exact_value(), k);
  const RationalPolynomial& d = c.defining_polynomial();
  unsigned m = static_cast<unsigned>(d.degree());
  bool binomial = d.coeff(0) != 0;
  for (unsigned i = 1; i < m; ++i) binomial = binomial && d.coeff(i) == 0;
  if (!binomial || !c.enclose(1e-20).positive())
    throw Error(ErrorKind::NotApplicable, "exact_power supports positive roots of binomials a*t^m - b only");
  Rational base = -d.coeff(0) / d.leading();  // c^m
  unsigned g = std::gcd(k, m);
  if (m / g == 1) return pow(base, k / m);
  // (c^k)^(m/g) = base^(k/g)
  Rational target = pow(base, k / g);
  RationalPolynomial def = RationalPolynomial::monomial(1, m / g) - RationalPolynomial::constant(target);
  Interval enc = c.enclose(1e-30).pow(k).inflate(1e-25L);
  return AlgebraicConstant(def, enc.lower_rational(), enc.upper_rational());
}

const AlgebraicConstant& knot_x0() {
  static const AlgebraicConstant x0(RationalPolynomial({-3, 0, 0, 0, 5}), 0, 1);
  return x0;
}

const AlgebraicConstant& knot_x1() {
  static const AlgebraicConstant x1(RationalPolynomial({-3, 0, 0, 0, 0, 0, 0, 0, 5}), 0, 1);
  return x1;
}

namespace {

// Partial sums of atan(1/q) = sum (-1)^j / ((2j+1) q^(2j+1)).
struct AtanSeries {
  BigInt q;
  Rational sum = 0;
  Rational next_term;  // magnitude of the first omitted term
  int j = 0;
  explicit AtanSeries(long q_) : q(q_), next_term(make_rational(1, q_)) {}
  void step() {
    sum += (j % 2 == 0) ? next_term : Rational(-next_term);
    ++j;
    BigInt qpow;
    mpz_pow_ui(qpow.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(2 * j + 1));
    next_term = make_rational(1, BigInt(qpow * (2 * j + 1)));
  }
  // The true value lies between sum and sum ± next_term (alternating, decreasing).
  Rational lower() const { return j % 2 == 0 ? sum : Rational(sum - next_term); }
  Rational upper() const { return j % 2 == 0 ? Rational(sum + next_term) : sum; }
};

}  // namespace

PiEnclosure pi_enclosure(double width) {
  if (!(width >= 1e-30)) throw Error(ErrorKind::InvalidArgument, "pi enclosure width must be >= 1e-30");
  Rational target = rational_from_double(width) / 2;
  AtanSeries a5(5), a239(239);
  PiEnclosure out;
  for (;;) {
    a5.step();
    a239.step();
    out.lo = 16 * a5.lower() - 4 * a239.upper();
    out.hi = 16 * a5.upper() - 4 * a239.lower();
    if (out.hi - out.lo <= target) break;
  }
  out.terms = a5.j;
  out.enclosure = Interval(out.lo, out.hi);
  return out;
}

const Interval& pi_interval() {
  static const Interval pi = [] {
    AtanSeries a5(5), a239(239);
    for (int i = 0; i < 40; ++i) {
      a5.step();
      a239.step();
    }
    return Interval(16 * a5.lower() - 4 * a239.upper(), 16 * a5.upper() - 4 * a239.lower());
  }();
  return pi;
}

}  // namespace habcert
