#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "habcert/definition.hpp"
#include "habcert/error.hpp"
#include "habcert/pipeline.hpp"

using namespace habcert;

namespace {

VerifyOptions options(Formulation f, const Rational& eps) {
  VerifyOptions o;
  o.formulation = f;
  o.epsilon = eps;
  o.timestamp = "2026-01-01T00:00:00Z";
  return o;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("overall verdicts and exit codes") {
  struct Case {
    Formulation f;
    Rational eps;
    OverallVerdict verdict;
  };
  std::vector<Case> cases{
      {Formulation::C1, 1, OverallVerdict::CounterexampleConfirmed},
      {Formulation::C2, 1, OverallVerdict::CounterexampleConfirmed},
      {Formulation::C3, 1, OverallVerdict::CounterexampleConfirmed},
      {Formulation::C2, 0, OverallVerdict::NotACounterexample},
      {Formulation::C2, 2, OverallVerdict::HypothesisFailed},
      {Formulation::C3, -1, OverallVerdict::HypothesisFailed},
  };
  for (const auto& c : cases) {
    VerifyOutcome out = run_verify(options(c.f, c.eps));
    CHECK(out.verdict == c.verdict);
    CHECK(out.exit_code == exit_code_for(c.verdict));
    CHECK(out.document.verdict == to_string(c.verdict));
    CHECK(out.document.exit_code == out.exit_code);
  }
  CHECK(exit_code_for(OverallVerdict::CounterexampleConfirmed) == 0);
  CHECK(exit_code_for(OverallVerdict::NotACounterexample) == 0);
  CHECK(exit_code_for(OverallVerdict::Inconclusive) == 2);
  CHECK(exit_code_for(OverallVerdict::HypothesisFailed) == 3);
  for (auto v : {OverallVerdict::CounterexampleConfirmed, OverallVerdict::NotACounterexample,
                 OverallVerdict::HypothesisFailed, OverallVerdict::Inconclusive})
    CHECK(parse_overall_verdict(to_string(v)) == v);

  VerifyOptions n3 = options(Formulation::C2, 1);
  n3.n = 3;
  CHECK(run_verify(n3).verdict == OverallVerdict::Inconclusive);
}

TEST_CASE("non-conformant runs carry a watermark") {
  CHECK_FALSE(run_verify(options(Formulation::C2, 1)).document.watermark.has_value());
  auto doc = run_verify(options(Formulation::C2, 2)).document;
  REQUIRE(doc.watermark.has_value());
  CHECK(*doc.watermark == "NON-CONFORMANT");
  CHECK_FALSE(doc.run.conformant);
}

TEST_CASE("reports round trip and are byte-identical across runs") {
  for (Formulation f : {Formulation::C1, Formulation::C2, Formulation::C3}) {
    for (const Rational& e : {Rational(1), Rational(0), Rational(-1), Rational(2), Rational(1, 3)}) {
      VerifyOptions o = options(f, e);
      std::string a = report_to_json(run_verify(o).document);
      std::string b = report_to_json(run_verify(o).document);
      CHECK(a == b);
      ReportDocument parsed = parse_report(a);
      CHECK(parsed == run_verify(o).document);
      CHECK(report_to_json(parsed) == a);
      CHECK(a.back() == '\n');
    }
  }
}

TEST_CASE("report structure") {
  auto doc = run_verify(options(Formulation::C2, 1)).document;
  std::string json = report_to_json(doc);
  std::vector<std::string> keys{"\"schema_version\"", "\"run\"", "\"watermark\"", "\"shape_report\"",
                                "\"margin_certificate\"", "\"violation_report\"", "\"errors\"", "\"verdict\"",
                                "\"exit_code\""};
  std::size_t pos = 0;
  for (const auto& k : keys) {
    auto at = json.find("\n  " + k);
    REQUIRE(at != std::string::npos);
    CHECK(at >= pos);
    pos = at;
  }
  REQUIRE(doc.margin_certificate.has_value());
  CHECK(doc.margin_certificate->verdict == "CERTIFIED");
  CHECK(doc.margin_certificate->inner_prefactor == "6*knot^2*s^2");
  REQUIRE(doc.violation_report.has_value());
  CHECK(doc.violation_report->verdict == "VIOLATED");
  CHECK(doc.violation_report->rhs_closed_form == "3/2*pi");
  CHECK(doc.run.timestamp == "2026-01-01T00:00:00Z");
  CHECK(doc.run.version == kLibraryVersion);
  CHECK(doc.run.function.source == "builtin");
  CHECK(doc.errors.empty());
}

TEST_CASE("malformed reports are rejected") {
  std::string json = report_to_json(run_verify(options(Formulation::C2, 1)).document);
  CHECK_THROWS_AS(parse_report("{"), Error);
  CHECK_THROWS_AS(parse_report("[]"), Error);
  std::string wrong = json;
  wrong.replace(wrong.find("\"schema_version\": 1"), 19, "\"schema_version\": 2");
  CHECK_THROWS_AS(parse_report(wrong), Error);
  std::string missing = json;
  missing.replace(missing.find("\"verdict\": \"COUNTEREXAMPLE"), 9, "\"verdikt\"");
  CHECK_THROWS_AS(parse_report(missing), Error);
  CHECK_THROWS_AS(write_report(parse_report(json), "/nonexistent/dir/report.json"), Error);
}

TEST_CASE("write_report output parses back") {
  auto doc = run_verify(options(Formulation::C3, 1)).document;
  std::string path = "test_report_roundtrip.json";
  write_report(doc, path);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(parse_report(ss.str()) == doc);
  std::remove(path.c_str());
}

TEST_CASE("definition files reproduce the builtin verdicts") {
  for (Formulation f : {Formulation::C1, Formulation::C2, Formulation::C3}) {
    VerifyOptions o = options(f, 1);
    o.definition_json = write_definition(resolve_function(f, 1, std::nullopt));
    VerifyOutcome out = run_verify(o);
    CHECK(out.verdict == OverallVerdict::CounterexampleConfirmed);
    CHECK(out.document.run.function.source == "definition");
  }
  VerifyOptions bad = options(Formulation::C2, 1);
  bad.definition_json = "{not json";
  CHECK_THROWS_AS(run_verify(bad), Error);
}

TEST_CASE("epsilon grids") {
  auto g = parse_epsilon_grid("0:1:1/4");
  REQUIRE(g.size() == 5);
  CHECK(g[0] == 0);
  CHECK(g[4] == 1);
  CHECK(parse_epsilon_grid("1/3:1:1/3").size() == 3);
  CHECK(parse_epsilon_grid("0:1:3/10").size() == 4);  // 0, 3/10, 3/5, 9/10
  CHECK(parse_epsilon_grid("-1:1:1").size() == 3);
  CHECK_THROWS_AS(parse_epsilon_grid("0:1"), Error);
  CHECK_THROWS_AS(parse_epsilon_grid("0:1:0"), Error);
  CHECK_THROWS_AS(parse_epsilon_grid("0:1:-1/4"), Error);
  CHECK_THROWS_AS(parse_epsilon_grid("1:0:1/4"), Error);
  CHECK_THROWS_AS(parse_epsilon_grid("0:1:1/100000"), Error);
  CHECK_THROWS_AS(parse_epsilon_grid("a:b:c"), Error);
}

TEST_CASE("sweeps") {
  SweepOptions o;
  o.formulation = Formulation::C2;
  o.grid = parse_epsilon_grid("1/4:1:1/4");
  SweepResult r = run_sweep(o);
  REQUIRE(r.rows.size() == 4);
  for (const auto& row : r.rows) {
    CHECK(row.verdict == OverallVerdict::CounterexampleConfirmed);
    CHECK(row.hypothesis == "CERTIFIED");
    CHECK(row.conclusion == "VIOLATED");
  }
  CHECK(r.margins_increasing);
  REQUIRE(r.max_relative_deviation.has_value());
  CHECK(*r.max_relative_deviation <= 1e-9L);
  CHECK(r.exit_code == 0);
  auto table = lines(r.table());
  CHECK(table.size() >= 5);
  CHECK(table[0].rfind("epsilon", 0) == 0);
  CHECK(r.to_json().find("\"rows\"") != std::string::npos);

  o.grid = parse_epsilon_grid("1:2:1");
  CHECK(run_sweep(o).exit_code == 3);
}

TEST_CASE("csv emission") {
  EmitOptions o;
  o.role = Role::H;
  o.epsilon = 1;
  o.range_lo = 0;
  o.range_hi = 1;
  o.samples = 5;
  auto rows = lines(emit_csv(o));
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == "x,value,width,x_exact");
  CHECK(rows[1] == "0,0,0.000e+00,0");
  CHECK(rows[5] == "1,6,0.000e+00,1");
  CHECK(rows[3].substr(rows[3].rfind(',') + 1) == "1/2");
  // h(1/2) from the defining formula in double precision.
  double x0 = std::pow(0.6, 0.25), tau = (x0 - 0.5) / x0;
  double h = 6 * 0.25 * (1 - (7 * tau * tau - 8 * tau + 2) * tau * tau);
  double value = std::stod(rows[3].substr(4, rows[3].find(',', 4) - 4));
  CHECK(std::fabs(value - h) < 1e-14);

  o.role = Role::S;
  o.samples = 1;
  CHECK(lines(emit_csv(o)).size() == 2);
  CHECK_THROWS_AS(parse_range("1:0"), Error);
  CHECK_THROWS_AS(parse_range("-1:1"), Error);
  CHECK_THROWS_AS(parse_range("0-1"), Error);
  CHECK(parse_range("1/3:2") == std::make_pair(Rational(1, 3), Rational(2)));
}
