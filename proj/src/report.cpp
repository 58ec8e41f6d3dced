#include "habcert/report.hpp"

#include <fstream>
#include <json.hpp>

#include "habcert/error.hpp"

namespace habcert {

using json = nlohmann::ordered_json;

const char* to_string(OverallVerdict v) {
  switch (v) {
    case OverallVerdict::CounterexampleConfirmed: return "COUNTEREXAMPLE_CONFIRMED";
    case OverallVerdict::NotACounterexample: return "NOT_A_COUNTEREXAMPLE";
    case OverallVerdict::HypothesisFailed: return "HYPOTHESIS_FAILED";
    case OverallVerdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

OverallVerdict parse_overall_verdict(const std::string& s) {
  for (auto v : {OverallVerdict::CounterexampleConfirmed, OverallVerdict::NotACounterexample,
                 OverallVerdict::HypothesisFailed, OverallVerdict::Inconclusive})
    if (s == to_string(v)) return v;
  throw Error(ErrorKind::Parse, "unknown verdict '" + s + "'");
}

int exit_code_for(OverallVerdict v) {
  switch (v) {
    case OverallVerdict::CounterexampleConfirmed:
    case OverallVerdict::NotACounterexample: return 0;
    case OverallVerdict::Inconclusive: return 2;
    case OverallVerdict::HypothesisFailed: return 3;
  }
  return 2;
}

namespace {

template <class T, class F>
json optional_json(const std::optional<T>& v, F&& f) {
  return v ? f(*v) : json(nullptr);
}

json strings(const std::vector<std::string>& v) { return json(v); }

json to_json(const IntervalText& i) { return {{"lo", i.lo}, {"hi", i.hi}, {"width", i.width}}; }

json to_json(const CertificateText& c) {
  json roots = json::array();
  for (const auto& r : c.roots)
    roots.push_back({{"lo", r.lo}, {"hi", r.hi}, {"multiplicity", r.multiplicity}, {"exact", r.exact}});
  json j;
  j["verdict"] = c.verdict;
  j["polynomial"] = strings(c.polynomial);
  j["domain"] = {c.domain_lo, c.domain_hi};
  j["zero_polynomial"] = c.zero_polynomial;
  j["roots"] = roots;
  j["endpoint_values"] = {c.value_at_lo, c.value_at_hi};
  j["negative_witness"] = optional_json(c.negative_witness, [](const std::string& s) { return json(s); });
  j["audited"] = c.audited;
  return j;
}

json to_json(const ShapeSummary& s) {
  json checks = json::object();
  for (const auto& c : s.checks) {
    json cj;
    cj["passed"] = c.passed;
    cj["required"] = c.required;
    cj["note"] = c.note;
    cj["certificate"] = optional_json(c.certificate, [](const CertificateText& t) { return to_json(t); });
    checks[c.name] = cj;
  }
  json j;
  j["role"] = s.role;
  j["conformant"] = s.conformant;
  j["admissible"] = s.admissible;
  j["checks"] = checks;
  j["sampled_convexity"] = s.sampled_convexity;
  return j;
}

json to_json(const MarginSummary& m) {
  auto str = [](const std::string& s) { return json(s); };
  auto cert = [](const CertificateText& t) { return to_json(t); };
  json j;
  j["verdict"] = m.verdict;
  j["reason"] = m.reason;
  j["baseline_coefficient"] = optional_json(m.baseline_coefficient, str);
  j["baseline_power"] = optional_json(m.baseline_power, str);
  j["via_fubini"] = m.via_fubini;
  j["inner"] = {{"polynomial", strings(m.inner_polynomial)},
                {"prefactor", m.inner_prefactor},
                {"certificate", optional_json(m.inner_certificate, cert)}};
  j["outer"] = {{"polynomial", strings(m.outer_polynomial)},
                {"prefactor", m.outer_prefactor},
                {"certificate", optional_json(m.outer_certificate, cert)},
                {"A", m.outer_A},
                {"B", m.outer_B}};
  j["witness_t"] = optional_json(m.witness_t, [](const IntervalText& i) { return to_json(i); });
  j["fubini_deviation"] = optional_json(m.fubini_deviation, str);
  return j;
}

json to_json(const ViolationSummary& v) {
  json j;
  j["verdict"] = v.verdict;
  j["lhs"] = to_json(v.lhs);
  j["rhs"] = to_json(v.rhs);
  j["rhs_closed_form"] = v.rhs_closed_form;
  j["margin"] = to_json(v.margin);
  j["error_budget"] = {{"quadrature", v.quadrature_error},
                       {"tail", v.tail_error},
                       {"constants", v.constants_error},
                       {"total", v.total_budget}};
  j["truncation"] = v.truncation;
  j["tail_closed_form"] = v.tail_closed_form;
  j["achieved"] = v.achieved;
  j["tolerance"] = v.tolerance;
  j["evaluations"] = v.evaluations;
  return j;
}

json to_json(const RunMetadata& r) {
  const FunctionText& f = r.function;
  json j;
  j["conjecture"] = r.conjecture;
  j["n"] = r.n;
  j["exponent"] = r.exponent;
  j["epsilon"] = r.epsilon;
  j["tolerance"] = r.tolerance;
  j["precision"] = r.precision;
  j["timestamp"] = r.timestamp;
  j["version"] = r.version;
  j["conformant"] = r.conformant;
  j["function"] = {{"source", f.source},
                   {"role", f.role},
                   {"scale", f.scale},
                   {"power", f.power},
                   {"knot", {{"defining_poly", strings(f.knot_polynomial)}, {"bracket", {f.knot_bracket_lo, f.knot_bracket_hi}}}},
                   {"normalization", f.normalization},
                   {"perturbation", strings(f.perturbation)}};
  return j;
}

// Parsing.

const json& at(const json& j, const char* key) {
  if (!j.is_object()) throw Error(ErrorKind::Parse, std::string("expected an object around '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw Error(ErrorKind::Parse, std::string("report is missing '") + key + "'");
  return *it;
}

template <class T>
T get(const json& j, const char* key) {
  try {
    return at(j, key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("bad value for '") + key + "': " + e.what());
  }
}

template <class T, class F>
std::optional<T> get_optional(const json& j, const char* key, F&& f) {
  const json& v = at(j, key);
  if (v.is_null()) return std::nullopt;
  return f(v);
}

std::optional<std::string> optional_string(const json& j, const char* key) {
  return get_optional<std::string>(j, key, [&](const json& v) {
    if (!v.is_string()) throw Error(ErrorKind::Parse, std::string("'") + key + "' must be a string");
    return v.get<std::string>();
  });
}

IntervalText interval_from(const json& j) { return {get<std::string>(j, "lo"), get<std::string>(j, "hi"), get<std::string>(j, "width")}; }

std::pair<std::string, std::string> pair_from(const json& j, const char* key) {
  const json& a = at(j, key);
  if (!a.is_array() || a.size() != 2 || !a[0].is_string() || !a[1].is_string())
    throw Error(ErrorKind::Parse, std::string("'") + key + "' must be a pair of strings");
  return {a[0].get<std::string>(), a[1].get<std::string>()};
}

CertificateText certificate_from(const json& j) {
  CertificateText c;
  c.verdict = get<std::string>(j, "verdict");
  c.polynomial = get<std::vector<std::string>>(j, "polynomial");
  std::tie(c.domain_lo, c.domain_hi) = pair_from(j, "domain");
  c.zero_polynomial = get<bool>(j, "zero_polynomial");
  for (const auto& r : at(j, "roots"))
    c.roots.push_back({get<std::string>(r, "lo"), get<std::string>(r, "hi"), get<unsigned>(r, "multiplicity"),
                       get<bool>(r, "exact")});
  std::tie(c.value_at_lo, c.value_at_hi) = pair_from(j, "endpoint_values");
  c.negative_witness = optional_string(j, "negative_witness");
  c.audited = get<bool>(j, "audited");
  return c;
}

ShapeSummary shape_from(const json& j) {
  ShapeSummary s;
  s.role = get<std::string>(j, "role");
  s.conformant = get<bool>(j, "conformant");
  s.admissible = get<bool>(j, "admissible");
  const json& checks = at(j, "checks");
  if (!checks.is_object()) throw Error(ErrorKind::Parse, "'checks' must be an object");
  for (auto it = checks.begin(); it != checks.end(); ++it) {
    ShapeCheckText c;
    c.name = it.key();
    c.passed = get<bool>(it.value(), "passed");
    c.required = get<bool>(it.value(), "required");
    c.note = get<std::string>(it.value(), "note");
    c.certificate = get_optional<CertificateText>(it.value(), "certificate", certificate_from);
    s.checks.push_back(std::move(c));
  }
  s.sampled_convexity = get<bool>(j, "sampled_convexity");
  return s;
}

MarginSummary margin_from(const json& j) {
  MarginSummary m;
  m.verdict = get<std::string>(j, "verdict");
  m.reason = get<std::string>(j, "reason");
  m.baseline_coefficient = optional_string(j, "baseline_coefficient");
  m.baseline_power = optional_string(j, "baseline_power");
  m.via_fubini = get<bool>(j, "via_fubini");
  const json& in = at(j, "inner");
  m.inner_polynomial = get<std::vector<std::string>>(in, "polynomial");
  m.inner_prefactor = get<std::string>(in, "prefactor");
  m.inner_certificate = get_optional<CertificateText>(in, "certificate", certificate_from);
  const json& out = at(j, "outer");
  m.outer_polynomial = get<std::vector<std::string>>(out, "polynomial");
  m.outer_prefactor = get<std::string>(out, "prefactor");
  m.outer_certificate = get_optional<CertificateText>(out, "certificate", certificate_from);
  m.outer_A = get<std::string>(out, "A");
  m.outer_B = get<std::string>(out, "B");
  m.witness_t = get_optional<IntervalText>(j, "witness_t", interval_from);
  m.fubini_deviation = optional_string(j, "fubini_deviation");
  return m;
}

ViolationSummary violation_from(const json& j) {
  ViolationSummary v;
  v.verdict = get<std::string>(j, "verdict");
  v.lhs = interval_from(at(j, "lhs"));
  v.rhs = interval_from(at(j, "rhs"));
  v.rhs_closed_form = get<std::string>(j, "rhs_closed_form");
  v.margin = interval_from(at(j, "margin"));
  const json& b = at(j, "error_budget");
  v.quadrature_error = get<std::string>(b, "quadrature");
  v.tail_error = get<std::string>(b, "tail");
  v.constants_error = get<std::string>(b, "constants");
  v.total_budget = get<std::string>(b, "total");
  v.truncation = get<std::string>(j, "truncation");
  v.tail_closed_form = get<bool>(j, "tail_closed_form");
  v.achieved = get<bool>(j, "achieved");
  v.tolerance = get<std::string>(j, "tolerance");
  v.evaluations = get<long>(j, "evaluations");
  return v;
}

RunMetadata run_from(const json& j) {
  RunMetadata r;
  r.conjecture = get<int>(j, "conjecture");
  r.n = get<unsigned>(j, "n");
  r.exponent = get<std::string>(j, "exponent");
  r.epsilon = get<std::string>(j, "epsilon");
  r.tolerance = get<std::string>(j, "tolerance");
  r.precision = get<std::string>(j, "precision");
  r.timestamp = get<std::string>(j, "timestamp");
  r.version = get<std::string>(j, "version");
  r.conformant = get<bool>(j, "conformant");
  const json& f = at(j, "function");
  r.function.source = get<std::string>(f, "source");
  r.function.role = get<std::string>(f, "role");
  r.function.scale = get<std::string>(f, "scale");
  r.function.power = get<unsigned>(f, "power");
  const json& k = at(f, "knot");
  r.function.knot_polynomial = get<std::vector<std::string>>(k, "defining_poly");
  std::tie(r.function.knot_bracket_lo, r.function.knot_bracket_hi) = pair_from(k, "bracket");
  r.function.normalization = get<std::string>(f, "normalization");
  r.function.perturbation = get<std::vector<std::string>>(f, "perturbation");
  return r;
}

}  // namespace

std::string report_to_json(const ReportDocument& doc) {
  json j;
  j["schema_version"] = doc.schema_version;
  j["run"] = to_json(doc.run);
  j["watermark"] = optional_json(doc.watermark, [](const std::string& s) { return json(s); });
  j["shape_report"] = to_json(doc.shape_report);
  j["margin_certificate"] = optional_json(doc.margin_certificate, [](const MarginSummary& m) { return to_json(m); });
  j["violation_report"] = optional_json(doc.violation_report, [](const ViolationSummary& v) { return to_json(v); });
  j["errors"] = strings(doc.errors);
  j["verdict"] = doc.verdict;
  j["exit_code"] = doc.exit_code;
  return j.dump(2) + "\n";
}

ReportDocument parse_report(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("report is not valid JSON: ") + e.what());
  }
  ReportDocument d;
  d.schema_version = get<int>(j, "schema_version");
  if (d.schema_version != kReportSchemaVersion)
    throw Error(ErrorKind::Parse, "unsupported report schema version " + std::to_string(d.schema_version));
  d.run = run_from(at(j, "run"));
  d.watermark = optional_string(j, "watermark");
  d.shape_report = shape_from(at(j, "shape_report"));
  d.margin_certificate = get_optional<MarginSummary>(j, "margin_certificate", margin_from);
  d.violation_report = get_optional<ViolationSummary>(j, "violation_report", violation_from);
  d.errors = get<std::vector<std::string>>(j, "errors");
  d.verdict = get<std::string>(j, "verdict");
  parse_overall_verdict(d.verdict);
  d.exit_code = get<int>(j, "exit_code");
  return d;
}

void write_report(const ReportDocument& doc, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
  out << report_to_json(doc);
  if (!out) throw Error(ErrorKind::Io, "failed writing '" + path + "'");
}

}  // namespace habcert
