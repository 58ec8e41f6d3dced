#include "habcert/quadrature.hpp"

#include <cmath>

namespace habcert {

namespace {

using LD = long double;

ValidationCase run_case(const std::string& name, const IntegrandDescriptor<LD>& d, LD a, LD b, LD truth, LD tol) {
  auto r = integrate<LD>(d, a, b, tol);
  ValidationCase c{name, r.value, r.error_bound, truth, false};
  c.passed = !r.max_depth_hit && std::fabs(r.value - truth) <= r.error_bound;
  return c;
}

}  // namespace

ValidationReport validate_error_model(long double tol) {
  const LD pi = 3.141592653589793238462643383279502884L;
  ValidationReport rep;
  auto smooth = [](std::function<LD(LD)> f) { return IntegrandDescriptor<LD>{std::move(f), Singularity::None}; };
  auto logged = [](std::function<LD(LD)> f) { return IntegrandDescriptor<LD>{std::move(f), Singularity::LogAtLeft}; };

  rep.cases.push_back(run_case("x on [0,1]", smooth([](LD x) { return x; }), 0, 1, 0.5L, tol));
  rep.cases.push_back(run_case("x^5-3x^2+1 on [0,2]", smooth([](LD x) { return std::pow(x, 5) - 3 * x * x + 1; }), 0, 2,
                               14.0L / 3, tol));
  rep.cases.push_back(run_case("x^14 on [-1,1]", smooth([](LD x) { return std::pow(x, 14); }), -1, 1, 2.0L / 15, tol));
  rep.cases.push_back(run_case("exp on [0,1]", smooth([](LD x) { return std::exp(x); }), 0, 1, std::exp(1.0L) - 1, tol));

  auto w2 = [](LD t) { return 6 * t / (1 + t * t * t * t); };
  rep.cases.push_back(run_case("6t/(1+t^4) on [0,1]", smooth(w2), 0, 1, 3 * pi / 4, tol));
  rep.cases.push_back(run_case("6t/(1+t^4) on [1,100]", smooth(w2), 1, 100, 3 * (std::atan(1e4L) - pi / 4), tol));
  auto g1 = [](LD w) { return std::atan(w) - w / (1 + w * w); };
  rep.cases.push_back(run_case("6t^11/(1+t^8)^2 on [1,10]", smooth([](LD t) {
                                 LD t8 = std::pow(t, 8);
                                 return 6 * std::pow(t, 11) / ((1 + t8) * (1 + t8));
                               }),
                               1, 10, 0.75L * (g1(1e4L) - g1(1)), tol));
  auto f3 = [](LD t) { return 6 * t * t * std::log1p(std::pow(t, -4)) + 12 * std::atan(t * t); };
  rep.cases.push_back(run_case("12t ln(1+t^-4) on [1,10]", smooth([](LD t) { return 12 * t * std::log1p(std::pow(t, -4)); }), 1,
                               10, f3(10) - f3(1), tol));

  rep.cases.push_back(run_case("-ln x on [0,1]", logged([](LD x) { return -std::log(x); }), 0, 1, 1, tol));
  rep.cases.push_back(run_case("x(x-1-ln x) on [0,1]", logged([](LD x) { return x * (x - 1 - std::log(x)); }), 0, 1, 1.0L / 12,
                               tol));
  for (int n = 0; n <= 6; ++n) {
    LD truth = -1.0L / ((n + 1) * (n + 1));
    rep.cases.push_back(run_case("x^" + std::to_string(n) + " ln x on [0,1]",
                                 logged([n](LD x) { return std::pow(x, n) * std::log(x); }), 0, 1, truth, tol));
  }
  return rep;
}

}  // namespace habcert
