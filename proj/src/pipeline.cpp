#include "habcert/pipeline.hpp"

#include <cstdio>
#include <json.hpp>
#include <sstream>

#include "habcert/definition.hpp"
#include "habcert/error.hpp"

namespace habcert {

namespace {

std::string sci(long double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*Le", digits, v);
  return buf;
}

IntervalText interval_text(const Interval& i) { return {i.lower_string(30), i.upper_string(30), sci(i.width(), 3)}; }

std::vector<std::string> coefficient_strings(const RationalPolynomial& p) {
  std::vector<std::string> out;
  for (const auto& c : p.coeffs()) out.push_back(to_string(c));
  if (out.empty()) out.push_back("0");
  return out;
}

CertificateText certificate_text(const SignCertificate& c) {
  CertificateText t;
  t.verdict = to_string(c.verdict);
  t.polynomial = coefficient_strings(c.polynomial);
  t.domain_lo = to_string(c.domain_lo);
  t.domain_hi = to_string(c.domain_hi);
  t.zero_polynomial = c.zero_polynomial;
  for (const auto& r : c.roots) {
    Interval i = r.interval();
    t.roots.push_back({i.lower_string(20), i.upper_string(20), r.multiplicity, r.exact});
  }
  t.value_at_lo = to_string(c.value_at_lo);
  t.value_at_hi = to_string(c.value_at_hi);
  if (c.negative_witness)
    t.negative_witness = to_string(c.negative_witness->point) + ": " + to_string(c.negative_witness->value);
  t.audited = c.audit();
  return t;
}

ShapeCheckText check_text(const char* name, const ShapeCheck& c) {
  ShapeCheckText t;
  t.name = name;
  t.passed = c.passed;
  t.required = c.required;
  t.note = c.note;
  if (c.certificate) t.certificate = certificate_text(*c.certificate);
  return t;
}

ShapeSummary shape_summary(const ShapeReport& r) {
  ShapeSummary s;
  s.role = to_string(r.role);
  s.conformant = r.conformant;
  s.admissible = r.admissible();
  s.checks = {check_text("continuous", r.continuous), check_text("nonnegative", r.nonnegative),
              check_text("nondecreasing", r.nondecreasing), check_text("log_convex", r.log_convex)};
  s.sampled_convexity = r.sampled_convexity;
  return s;
}

MarginSummary margin_summary(const MarginCertificate& mc) {
  MarginSummary s;
  s.verdict = to_string(mc.verdict);
  s.reason = mc.reason;
  if (mc.margin) {
    const HypothesisMargin& m = *mc.margin;
    s.baseline_coefficient = to_string(m.baseline_coefficient);
    s.baseline_power = to_string(m.baseline_power);
    s.via_fubini = m.via_fubini;
    s.inner_polynomial = coefficient_strings(m.inner);
    s.inner_prefactor = m.inner_prefactor.to_string();
    s.outer_polynomial = coefficient_strings(m.outer);
    s.outer_prefactor = m.outer_prefactor.to_string();
    s.outer_A = to_string(m.outer_A);
    s.outer_B = to_string(m.outer_B);
  }
  if (mc.inner) s.inner_certificate = certificate_text(*mc.inner);
  if (mc.outer) s.outer_certificate = certificate_text(*mc.outer);
  if (mc.witness_t) s.witness_t = interval_text(*mc.witness_t);
  if (mc.fubini_deviation) s.fubini_deviation = sci(*mc.fubini_deviation, 3);
  return s;
}

ViolationSummary violation_summary(const ViolationReport& v) {
  ViolationSummary s;
  s.verdict = to_string(v.verdict);
  s.lhs = interval_text(v.lhs.enclosure);
  s.rhs = interval_text(v.rhs.enclosure);
  s.rhs_closed_form = v.rhs.closed_form();
  s.margin = interval_text(v.margin);
  s.quadrature_error = sci(v.lhs.budget.quadrature, 3);
  s.tail_error = sci(v.lhs.budget.tail, 3);
  s.constants_error = sci(v.lhs.budget.constants, 3);
  s.total_budget = sci(v.total_budget, 3);
  s.truncation = to_string(v.lhs.truncation);
  s.tail_closed_form = v.lhs.tail_closed_form;
  s.achieved = v.lhs.achieved;
  s.tolerance = sci(v.tolerance, 3);
  s.evaluations = v.lhs.evaluations;
  return s;
}

FunctionText function_text(const FamilyFunction& f, bool builtin) {
  FunctionText t;
  t.source = builtin ? "builtin" : "definition";
  t.role = to_string(f.role());
  t.scale = to_string(f.scale());
  t.power = f.power();
  t.knot_polynomial = coefficient_strings(f.knot().defining_polynomial());
  t.knot_bracket_lo = to_string(f.knot().bracket_lo());
  t.knot_bracket_hi = to_string(f.knot().bracket_hi());
  t.normalization = to_string(f.normalization());
  t.perturbation = coefficient_strings(f.perturbation());
  return t;
}

FamilyFunction builtin(Role r, const Rational& eps) {
  switch (r) {
    case Role::Q: return build_q({eps});
    case Role::H: return build_h({eps});
    case Role::S: return build_S({eps});
  }
  return build_h({eps});
}

OverallVerdict decide(const ShapeReport& shape, const MarginCertificate& mc, const std::optional<ViolationReport>& v) {
  if (!shape.admissible() || mc.verdict == HypothesisVerdict::Refuted) return OverallVerdict::HypothesisFailed;
  if (mc.verdict == HypothesisVerdict::NotApplicable || !v) return OverallVerdict::Inconclusive;
  switch (v->verdict) {
    case ConclusionVerdict::Violated: return OverallVerdict::CounterexampleConfirmed;
    case ConclusionVerdict::Satisfied:
    case ConclusionVerdict::EqualityWithinTol: return OverallVerdict::NotACounterexample;
    case ConclusionVerdict::Inconclusive: return OverallVerdict::Inconclusive;
  }
  return OverallVerdict::Inconclusive;
}

}  // namespace

ConjectureParams resolve_params(const VerifyOptions& opt) {
  ConjectureParams p = ConjectureParams::standard(opt.formulation);
  if (opt.n) p.n = *opt.n;
  if (opt.exponent) p.exponent = *opt.exponent;
  p.validate();
  return p;
}

FamilyFunction resolve_function(Formulation f, const Rational& epsilon, const std::optional<std::string>& definition) {
  if (definition) return parse_definition(*definition, role_for(f), epsilon);
  return builtin(role_for(f), epsilon);
}

VerifyOutcome run_verify(const VerifyOptions& opt) {
  if (!(opt.tolerance > 0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
  const ConjectureParams params = resolve_params(opt);
  const FamilyFunction f = resolve_function(opt.formulation, opt.epsilon, opt.definition_json);

  VerifyOutcome out;
  ReportDocument& doc = out.document;
  doc.run.conjecture = static_cast<int>(params.formulation) + 1;
  doc.run.n = params.n;
  doc.run.exponent = to_string(params.exponent);
  doc.run.epsilon = to_string(opt.epsilon);
  doc.run.tolerance = sci(opt.tolerance, 3);
  doc.run.precision = to_string(opt.precision);
  doc.run.timestamp = opt.timestamp;
  doc.run.version = kLibraryVersion;
  doc.run.conformant = f.conformant();
  doc.run.function = function_text(f, !opt.definition_json);
  if (!f.conformant()) doc.watermark = "NON-CONFORMANT";

  out.shape = check_shape(f);
  doc.shape_report = shape_summary(*out.shape);

  out.hypothesis = certify_hypothesis(f, params);
  doc.margin_certificate = margin_summary(*out.hypothesis);

  try {
    out.violation = violation_report(f, params, opt.tolerance, opt.precision);
    doc.violation_report = violation_summary(*out.violation);
  } catch (const Error& e) {
    doc.errors.push_back(std::string("conclusion: ") + e.what());
  }

  out.verdict = decide(*out.shape, *out.hypothesis, out.violation);
  out.exit_code = exit_code_for(out.verdict);
  doc.verdict = to_string(out.verdict);
  doc.exit_code = out.exit_code;
  return out;
}

std::vector<Rational> parse_epsilon_grid(const std::string& text) {
  const auto first = text.find(':');
  const auto second = first == std::string::npos ? std::string::npos : text.find(':', first + 1);
  if (second == std::string::npos || text.find(':', second + 1) != std::string::npos)
    throw Error(ErrorKind::InvalidArgument, "epsilon grid must look like start:stop:step");
  Rational start, stop, step;
  try {
    start = parse_rational(text.substr(0, first));
    stop = parse_rational(text.substr(first + 1, second - first - 1));
    step = parse_rational(text.substr(second + 1));
  } catch (const Error& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("epsilon grid: ") + e.what());
  }
  if (step <= 0) throw Error(ErrorKind::InvalidArgument, "epsilon grid step must be positive");
  if (stop < start) throw Error(ErrorKind::InvalidArgument, "epsilon grid is empty (stop < start)");
  std::vector<Rational> grid;
  for (Rational e = start; e <= stop; e += step) {
    grid.push_back(e);
    if (grid.size() > 10000) throw Error(ErrorKind::InvalidArgument, "epsilon grid has more than 10000 points");
  }
  return grid;
}

SweepResult run_sweep(const SweepOptions& opt) {
  if (opt.grid.empty()) throw Error(ErrorKind::InvalidArgument, "epsilon grid is empty");
  SweepResult res;
  int worst = 0;
  for (const auto& e : opt.grid) {
    VerifyOptions v;
    v.formulation = opt.formulation;
    v.n = opt.n;
    v.exponent = opt.exponent;
    v.epsilon = e;
    v.tolerance = opt.tolerance;
    v.precision = opt.precision;
    v.definition_json = opt.definition_json;
    VerifyOutcome o = run_verify(v);
    SweepRow row;
    row.epsilon = e;
    row.hypothesis = to_string(o.hypothesis->verdict);
    row.conclusion = o.violation ? to_string(o.violation->verdict) : "ERROR";
    if (o.violation) row.margin = o.violation->margin;
    row.verdict = o.verdict;
    worst = std::max(worst, o.exit_code);
    res.rows.push_back(std::move(row));
  }
  res.exit_code = worst;

  const SweepRow* ref = nullptr;
  long double dev = 0, allowance = 0;
  for (const auto& r : res.rows) {
    if (r.epsilon == 0 || !r.margin) continue;
    const long double ratio = r.margin->mid() / to_long_double(r.epsilon);
    const long double half = r.margin->width() / 2 / std::fabs(to_long_double(r.epsilon));
    if (!ref) {
      ref = &r;
      continue;
    }
    const long double r0 = ref->margin->mid() / to_long_double(ref->epsilon);
    const long double h0 = ref->margin->width() / 2 / std::fabs(to_long_double(ref->epsilon));
    const long double scale = r0 != 0 ? std::fabs(r0) : 1;
    dev = std::max(dev, std::fabs(ratio - r0) / scale);
    allowance = std::max(allowance, (half + h0) / scale);
  }
  if (ref) {
    res.max_relative_deviation = dev;
    res.deviation_allowance = allowance;
  }
  for (std::size_t i = 1; i < res.rows.size(); ++i) {
    const auto& a = res.rows[i - 1];
    const auto& b = res.rows[i];
    if (!a.margin || !b.margin || !(a.margin->mid() < b.margin->mid())) res.margins_increasing = false;
  }
  return res;
}

std::string SweepResult::table() const {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-10s %-15s %-20s %-26s %-26s %s\n", "epsilon", "hypothesis", "conclusion",
                "margin.lo", "margin.hi", "verdict");
  os << line;
  for (const auto& r : rows) {
    std::string lo = r.margin ? r.margin->lower_string(16) : "-";
    std::string hi = r.margin ? r.margin->upper_string(16) : "-";
    std::snprintf(line, sizeof line, "%-10s %-15s %-20s %-26s %-26s %s\n", to_string(r.epsilon).c_str(),
                  r.hypothesis.c_str(), r.conclusion.c_str(), lo.c_str(), hi.c_str(), to_string(r.verdict));
    os << line;
  }
  if (max_relative_deviation)
    os << "epsilon-linearity: max relative deviation of margin/epsilon " << sci(*max_relative_deviation, 3)
       << " (allowance from enclosure widths " << sci(*deviation_allowance, 3) << ")\n";
  os << "margins increasing: " << (margins_increasing ? "yes" : "no") << "\n";
  return os.str();
}

std::string SweepResult::to_json() const {
  nlohmann::ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  auto rows_json = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json row;
    row["epsilon"] = habcert::to_string(r.epsilon);
    row["hypothesis"] = r.hypothesis;
    row["conclusion"] = r.conclusion;
    if (r.margin) row["margin"] = {{"lo", r.margin->lower_string(30)}, {"hi", r.margin->upper_string(30)}};
    else row["margin"] = nullptr;
    row["verdict"] = habcert::to_string(r.verdict);
    rows_json.push_back(row);
  }
  j["rows"] = rows_json;
  j["max_relative_deviation"] = max_relative_deviation ? nlohmann::ordered_json(sci(*max_relative_deviation, 3)) : nullptr;
  j["deviation_allowance"] = deviation_allowance ? nlohmann::ordered_json(sci(*deviation_allowance, 3)) : nullptr;
  j["margins_increasing"] = margins_increasing;
  j["exit_code"] = exit_code;
  return j.dump(2) + "\n";
}

std::pair<Rational, Rational> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos || text.find(':', colon + 1) != std::string::npos)
    throw Error(ErrorKind::InvalidArgument, "range must look like a:b");
  Rational a, b;
  try {
    a = parse_rational(text.substr(0, colon));
    b = parse_rational(text.substr(colon + 1));
  } catch (const Error& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("range: ") + e.what());
  }
  if (a < 0) throw Error(ErrorKind::InvalidArgument, "range must start at x >= 0");
  if (!(a < b)) throw Error(ErrorKind::InvalidArgument, "range needs a < b");
  return {a, b};
}

std::string emit_csv(const EmitOptions& opt) {
  if (opt.range_lo < 0 || !(opt.range_lo < opt.range_hi))
    throw Error(ErrorKind::InvalidArgument, "range needs 0 <= a < b");
  if (opt.samples == 0) throw Error(ErrorKind::InvalidArgument, "samples must be at least 1");
  const FamilyFunction f = opt.definition_json
                               ? parse_definition(*opt.definition_json, opt.role, opt.epsilon)
                               : builtin(opt.role, opt.epsilon);
  std::ostringstream os;
  os << "x,value,width,x_exact\n";
  const Rational step = opt.samples > 1 ? Rational((opt.range_hi - opt.range_lo) / (opt.samples - 1)) : Rational(0);
  char buf[160];
  for (unsigned i = 0; i < opt.samples; ++i) {
    const Rational x = opt.range_lo + step * i;
    const Interval v = eval_function(f, x, opt.width);
    std::snprintf(buf, sizeof buf, "%.17Lg,%.17Lg,%.3Le,", Interval(x).mid(), v.mid(), v.width());
    os << buf << to_string(x) << "\n";
  }
  return os.str();
}

}  // namespace habcert
