#include "habcert/roots.hpp"

#include <algorithm>

#include "habcert/error.hpp"

namespace habcert {

namespace {

// Positive rescaling to coprime integer coefficients; keeps the sign pattern.
RationalPolynomial positive_content_free(const RationalPolynomial& p) {
  RationalPolynomial q = p.primitive();
  if (!q.is_zero() && sign(q.leading()) != sign(p.leading())) q = -q;
  return q;
}

int sgn_at(const RationalPolynomial& p, const Rational& x) { return sign(p(x)); }

struct Isolator {
  const RationalPolynomial& f;
  const SturmChain& chain;
  unsigned multiplicity;
  std::vector<RootEnclosure>& out;

  void push_exact(const Rational& r) { out.push_back({r, r, multiplicity, true, f}); }

  // Roots of f in (lo, hi], `count` of them.
  void run(const Rational& lo, const Rational& hi, int count) {
    if (count <= 0) return;
    if (count == 1) {
      if (sgn_at(f, hi) == 0) push_exact(hi);
      else out.push_back({lo, hi, multiplicity, false, f});
      return;
    }
    Rational mid = (lo + hi) / 2;
    int left = chain.count(lo, mid);
    run(lo, mid, left);
    run(mid, hi, count - left);
  }
};

bool separated(const RootEnclosure& a, const RootEnclosure& b) {
  if (a.hi < b.lo) return true;
  return a.hi == b.lo && !a.exact && !b.exact;
}

}  // namespace

SturmChain::SturmChain(const RationalPolynomial& p) {
  if (p.is_zero()) throw Error(ErrorKind::Domain, "Sturm chain of the zero polynomial");
  chain_.push_back(positive_content_free(p));
  if (p.degree() == 0) return;
  chain_.push_back(positive_content_free(p.derivative()));
  while (true) {
    RationalPolynomial r = divmod(chain_[chain_.size() - 2], chain_.back()).remainder;
    if (r.is_zero()) break;
    chain_.push_back(positive_content_free(-r));
  }
}

int SturmChain::variations(const Rational& x) const {
  int changes = 0, last = 0;
  for (const auto& q : chain_) {
    int s = sgn_at(q, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

Interval RootEnclosure::interval() const { return Interval(lo, hi); }

void RootEnclosure::refine(const Rational& max_width) {
  if (exact) return;
  SturmChain chain(factor);
  while (hi - lo > max_width) {
    Rational mid = (lo + hi) / 2;
    if (sgn_at(factor, mid) == 0) {
      lo = hi = mid;
      exact = true;
      return;
    }
    if (chain.count(lo, mid) == 1) hi = mid;
    else lo = mid;
  }
}

std::vector<RootEnclosure> isolate_roots(const RationalPolynomial& p, const Rational& a, const Rational& b) {
  if (p.is_zero()) throw Error(ErrorKind::Domain, "root isolation of the zero polynomial: every point is a root");
  if (!(a < b)) throw Error(ErrorKind::InvalidArgument, "root isolation needs a < b");
  std::vector<RootEnclosure> roots;
  for (const auto& sf : square_free_decomposition(p)) {
    SturmChain chain(sf.factor);
    Isolator iso{sf.factor, chain, sf.multiplicity, roots};
    if (sgn_at(sf.factor, a) == 0) iso.push_exact(a);
    iso.run(a, b, chain.count(a, b));
  }
  auto by_position = [](const RootEnclosure& x, const RootEnclosure& y) { return x.lo < y.lo || (x.lo == y.lo && x.hi < y.hi); };
  std::sort(roots.begin(), roots.end(), by_position);
  // Enclosures of different square-free factors may overlap until refined.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
      if (separated(roots[i], roots[i + 1])) continue;
      for (auto* r : {&roots[i], &roots[i + 1]})
        if (!r->exact) r->refine(r->width() / 2);
      changed = true;
    }
    if (changed) std::sort(roots.begin(), roots.end(), by_position);
  }
  return roots;
}

const char* to_string(SignVerdict v) {
  switch (v) {
    case SignVerdict::Nonnegative: return "NONNEGATIVE";
    case SignVerdict::Nonpositive: return "NONPOSITIVE";
    case SignVerdict::Indefinite: return "INDEFINITE";
  }
  return "?";
}

Rational simplest_dyadic_between(const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) throw Error(ErrorKind::InvalidArgument, "empty interval for dyadic sample");
  if (lo < 0 && hi > 0) return Rational(0);
  Rational scale = 1;
  for (;;) {
    Rational scaled = lo * scale;
    BigInt fl;
    mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    Rational candidate = Rational(BigInt(fl + 1)) / scale;
    candidate.canonicalize();
    if (candidate < hi) return candidate;
    scale *= 2;
  }
}

namespace {

// Gap samples between consecutive barriers; barriers are the domain ends and
// the enclosures.
std::vector<SignSample> sample_gaps(const RationalPolynomial& p, const Rational& a, const Rational& b,
                                    const std::vector<RootEnclosure>& roots) {
  std::vector<SignSample> samples;
  auto try_gap = [&](const Rational& left, const Rational& right) {
    Rational point;
    if (left < right) point = simplest_dyadic_between(left, right);
    else if (left == right && p(left) != 0) point = left;
    else return;
    samples.push_back({point, p(point)});
  };
  Rational left = a;
  for (const auto& r : roots) {
    try_gap(left, r.lo);
    left = r.hi;
  }
  try_gap(left, b);
  return samples;
}

}  // namespace

SignCertificate certify_sign(const RationalPolynomial& p, const Rational& a, const Rational& b) {
  if (!(a < b)) throw Error(ErrorKind::InvalidArgument, "sign certification needs a < b");
  SignCertificate cert;
  cert.polynomial = p;
  cert.domain_lo = a;
  cert.domain_hi = b;
  cert.value_at_lo = p(a);
  cert.value_at_hi = p(b);
  if (p.is_zero()) {
    cert.zero_polynomial = true;
    cert.verdict = SignVerdict::Nonnegative;
    return cert;
  }
  cert.roots = isolate_roots(p, a, b);
  cert.gap_samples = sample_gaps(p, a, b, cert.roots);
  bool any_pos = false, any_neg = false;
  for (const auto& s : cert.gap_samples) {
    if (s.value < 0 && !cert.negative_witness) cert.negative_witness = s;
    if (s.value > 0 && !cert.positive_witness) cert.positive_witness = s;
    any_pos |= s.value > 0;
    any_neg |= s.value < 0;
  }
  if (any_pos && any_neg) cert.verdict = SignVerdict::Indefinite;
  else if (any_neg) cert.verdict = SignVerdict::Nonpositive;
  else cert.verdict = SignVerdict::Nonnegative;
  return cert;
}

bool SignCertificate::audit() const {
  if (!(domain_lo < domain_hi)) return false;
  if (value_at_lo != polynomial(domain_lo) || value_at_hi != polynomial(domain_hi)) return false;
  if (zero_polynomial) return polynomial.is_zero() && verdict == SignVerdict::Nonnegative;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const auto& r = roots[i];
    if (r.lo < domain_lo || r.hi > domain_hi || r.lo > r.hi) return false;
    if (r.exact) {
      if (r.lo != r.hi || polynomial(r.lo) != 0) return false;
    } else {
      if (r.factor(r.hi) == 0 || SturmChain(r.factor).count(r.lo, r.hi) != 1) return false;
      if (r.factor(r.lo) == 0) return false;
    }
    if (divmod(polynomial, r.factor.pow(r.multiplicity)).remainder != RationalPolynomial{}) return false;
    if (i + 1 < roots.size() && !separated(r, roots[i + 1])) return false;
  }
  // The roots found must account for every root: degree bound on multiplicities.
  int total = 0;
  for (const auto& s : gap_samples) {
    if (s.value != polynomial(s.point) || s.value == 0) return false;
    if (s.point < domain_lo || s.point > domain_hi) return false;
    for (const auto& r : roots)
      if (!r.exact && s.point > r.lo && s.point < r.hi) return false;
  }
  for (const auto& r : roots) total += static_cast<int>(r.multiplicity) * static_cast<int>(r.factor.degree() > 0);
  if (total > polynomial.degree()) return false;
  bool any_neg = std::any_of(gap_samples.begin(), gap_samples.end(), [](const SignSample& s) { return s.value < 0; });
  bool any_pos = std::any_of(gap_samples.begin(), gap_samples.end(), [](const SignSample& s) { return s.value > 0; });
  switch (verdict) {
    case SignVerdict::Nonnegative: return !any_neg;
    case SignVerdict::Nonpositive: return !any_pos && any_neg;
    case SignVerdict::Indefinite: return any_pos && any_neg;
  }
  return false;
}

}  // namespace habcert
