#pragma once

#include <optional>
#include <string>
#include <vector>

#include "habcert/conclusion.hpp"
#include "habcert/conjecture.hpp"
#include "habcert/family.hpp"
#include "habcert/hypothesis.hpp"
#include "habcert/report.hpp"

namespace habcert {

inline constexpr const char* kLibraryVersion = "1.0.0";

struct VerifyOptions {
  Formulation formulation = Formulation::C2;
  std::optional<unsigned> n;
  std::optional<Rational> exponent;
  Rational epsilon = 1;
  double tolerance = 1e-12;
  PrecisionMode precision = PrecisionMode::Standard;
  std::string timestamp = "unspecified";
  /// User family in the definition-file format; the role comes from the conjecture.
  std::optional<std::string> definition_json;
};

struct VerifyOutcome {
  ReportDocument document;
  OverallVerdict verdict = OverallVerdict::Inconclusive;
  int exit_code = 2;
  std::optional<ShapeReport> shape;
  std::optional<MarginCertificate> hypothesis;
  std::optional<ViolationReport> violation;
};

/// Defaults n = 2 and the standard exponent for the formulation.
ConjectureParams resolve_params(const VerifyOptions& opt);
FamilyFunction resolve_function(Formulation f, const Rational& epsilon, const std::optional<std::string>& definition_json);

/// shape → hypothesis → conclusion. Throws Error(InvalidArgument/Parse) for
/// bad options; numerical trouble ends up in the verdict instead.
VerifyOutcome run_verify(const VerifyOptions& opt);

/// "start:stop:step", rationals, inclusive of stop when it lies on the grid.
/// Throws Error(InvalidArgument) for empty or malformed grids.
std::vector<Rational> parse_epsilon_grid(const std::string& text);

struct SweepOptions {
  Formulation formulation = Formulation::C2;
  std::optional<unsigned> n;
  std::optional<Rational> exponent;
  std::vector<Rational> grid;
  double tolerance = 1e-12;
  PrecisionMode precision = PrecisionMode::Standard;
  std::optional<std::string> definition_json;
};

struct SweepRow {
  Rational epsilon;
  std::string hypothesis;
  std::string conclusion;
  std::optional<Interval> margin;
  OverallVerdict verdict = OverallVerdict::Inconclusive;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  /// Over rows with ε != 0 and a conclusion margin.
  std::optional<long double> max_relative_deviation;
  std::optional<long double> deviation_allowance;
  bool margins_increasing = true;
  int exit_code = 0;

  std::string table() const;
  std::string to_json() const;
};

SweepResult run_sweep(const SweepOptions& opt);

struct EmitOptions {
  Role role = Role::H;
  Rational epsilon = 1;
  Rational range_lo = 0;
  Rational range_hi = 1;
  unsigned samples = 5;
  double width = 1e-15;
  std::optional<std::string> definition_json;
};

/// "a:b" with rationals 0 <= a < b. Throws Error(InvalidArgument).
std::pair<Rational, Rational> parse_range(const std::string& text);

/// Columns x,value,width,x_exact; samples equally spaced on [a, b].
std::string emit_csv(const EmitOptions& opt);

}  // namespace habcert
