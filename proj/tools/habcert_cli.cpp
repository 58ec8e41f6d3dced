#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "habcert/habcert.h"

namespace {

int fail(const std::string& what) {
  std::cerr << "habcert: " << what << "\n";
  return 1;
}

int library_failure(habcert_status s) {
  return fail(std::string(habcert_status_string(s)) + ": " + habcert_last_error());
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// HABCERT_PRECISION=standard|extended supplies the default mode.
bool default_precision(habcert_precision& out) {
  const char* env = std::getenv("HABCERT_PRECISION");
  if (!env || !*env || std::string(env) == "standard") {
    out = HABCERT_PRECISION_STANDARD;
    return true;
  }
  if (std::string(env) == "extended") {
    out = HABCERT_PRECISION_EXTENDED;
    return true;
  }
  return false;
}

struct Common {
  int conjecture = 0;
  int n = 0;
  std::string exponent;
  double tol = 1e-12;
  bool extended = false;
  std::string json_path;
  std::string definition_path;
  std::string definition;

  void add(CLI::App* cmd) {
    cmd->add_option("--conjecture", conjecture, "Formulation: 1 (S), 2 (h) or 3 (q)")->required()->check(CLI::Range(1, 3));
    cmd->add_option("--n", n, "Integer n (default 2)")->check(CLI::PositiveNumber);
    cmd->add_option("--exponent", exponent, "lambda for conjecture 1, alpha otherwise, as P/Q");
    cmd->add_option("--tol", tol, "Target width of the conclusion enclosure")->check(CLI::PositiveNumber);
    cmd->add_flag("--extended-precision", extended, "50-digit quadrature");
    cmd->add_option("--json", json_path, "Write the JSON report here");
    cmd->add_option("--definition", definition_path, "Function-definition JSON replacing the built-in family");
  }

  std::optional<int> prepare(habcert_precision& precision) {
    if (!default_precision(precision)) return fail("HABCERT_PRECISION must be 'standard' or 'extended'");
    if (extended) precision = HABCERT_PRECISION_EXTENDED;
    if (!definition_path.empty()) {
      auto text = read_file(definition_path);
      if (!text) return fail("cannot read definition file '" + definition_path + "'");
      definition = *text;
    }
    return std::nullopt;
  }
};

int run_verify(Common& c, const std::string& epsilon, const std::string& timestamp) {
  habcert_verify_options o;
  habcert_verify_options_init(&o);
  if (auto code = c.prepare(o.precision)) return *code;
  o.conjecture = c.conjecture;
  o.n = c.n;
  o.exponent = c.exponent.empty() ? nullptr : c.exponent.c_str();
  o.epsilon = epsilon.c_str();
  o.tolerance = c.tol;
  std::string ts = timestamp;
  if (ts.empty())
    if (const char* env = std::getenv("HABCERT_TIMESTAMP")) ts = env;
  o.timestamp = ts.empty() ? nullptr : ts.c_str();
  o.definition_json = c.definition.empty() ? nullptr : c.definition.c_str();

  habcert_report* report = nullptr;
  if (habcert_status s = habcert_verify(&o, &report); s != HABCERT_OK) return library_failure(s);
  std::cout << "conjecture " << c.conjecture << ", epsilon " << epsilon << ": " << habcert_report_verdict(report) << "\n";
  if (!c.json_path.empty()) {
    if (habcert_status s = habcert_report_write(report, c.json_path.c_str()); s != HABCERT_OK) {
      habcert_report_free(report);
      return library_failure(s);
    }
    std::cout << "report written to " << c.json_path << "\n";
  }
  const int code = habcert_report_exit_code(report);
  habcert_report_free(report);
  return code;
}

int run_sweep(Common& c, const std::string& grid) {
  habcert_sweep_options o;
  habcert_sweep_options_init(&o);
  if (auto code = c.prepare(o.precision)) return *code;
  o.conjecture = c.conjecture;
  o.n = c.n;
  o.exponent = c.exponent.empty() ? nullptr : c.exponent.c_str();
  o.epsilon_grid = grid.c_str();
  o.tolerance = c.tol;
  o.definition_json = c.definition.empty() ? nullptr : c.definition.c_str();

  habcert_sweep* sweep = nullptr;
  if (habcert_status s = habcert_sweep_run(&o, &sweep); s != HABCERT_OK) return library_failure(s);
  std::cout << habcert_sweep_table(sweep);
  if (!c.json_path.empty()) {
    std::ofstream out(c.json_path, std::ios::binary);
    out << habcert_sweep_json(sweep);
    if (!out) {
      habcert_sweep_free(sweep);
      return fail("cannot write '" + c.json_path + "'");
    }
  }
  const int code = habcert_sweep_exit_code(sweep);
  habcert_sweep_free(sweep);
  return code;
}

int run_emit(const std::string& function, const std::string& epsilon, const std::string& range, unsigned samples,
             const std::string& out_path, const std::string& definition_path) {
  std::string definition;
  if (!definition_path.empty()) {
    auto text = read_file(definition_path);
    if (!text) return fail("cannot read definition file '" + definition_path + "'");
    definition = *text;
  }
  habcert_emit_options o{};
  o.function = function.c_str();
  o.epsilon = epsilon.c_str();
  o.range = range.c_str();
  o.samples = samples;
  o.definition_json = definition.empty() ? nullptr : definition.c_str();
  char* csv = nullptr;
  if (habcert_status s = habcert_emit_csv(&o, &csv); s != HABCERT_OK) return library_failure(s);
  std::ofstream out(out_path, std::ios::binary);
  out << csv;
  habcert_string_free(csv);
  if (!out) return fail("cannot write '" + out_path + "'");
  std::cout << samples << " samples written to " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and interval certification of a counterexample to a family of integral inequalities"};
  app.set_version_flag("--version", std::string(habcert_version()));
  app.require_subcommand(0, 1);

  Common verify_common, sweep_common;
  std::string epsilon, timestamp, grid;
  auto* verify = app.add_subcommand("verify", "Shape, hypothesis and conclusion checks for one epsilon");
  verify_common.add(verify);
  verify->add_option("--epsilon", epsilon, "Family parameter as P/Q")->required();
  verify->add_option("--timestamp", timestamp, "Recorded in the report (default: $HABCERT_TIMESTAMP or 'unspecified')");

  auto* sweep = app.add_subcommand("sweep", "Verify along an epsilon grid");
  sweep_common.add(sweep);
  sweep->add_option("--epsilon-grid", grid, "start:stop:step, rationals")->required();

  std::string function, emit_eps, range, out_path, emit_definition;
  unsigned samples = 0;
  auto* emit = app.add_subcommand("emit", "Sample q, h or S to CSV");
  emit->add_option("--function", function, "q, h or S")->required();
  emit->add_option("--epsilon", emit_eps, "Family parameter as P/Q")->required();
  emit->add_option("--range", range, "a:b")->required();
  emit->add_option("--samples", samples, "Number of points")->required()->check(CLI::PositiveNumber);
  emit->add_option("--out", out_path, "CSV destination")->required();
  emit->add_option("--definition", emit_definition, "Function-definition JSON replacing the built-in family");

  if (argc <= 1) {
    std::cout << app.help();
    return 1;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 1;
  }
  try {
    if (*verify) return run_verify(verify_common, epsilon, timestamp);
    if (*sweep) return run_sweep(sweep_common, grid);
    if (*emit) return run_emit(function, emit_eps, range, samples, out_path, emit_definition);
  } catch (const std::exception& e) {
    return fail(e.what());
  }
  std::cout << app.help();
  return 1;
}
