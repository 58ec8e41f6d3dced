#pragma once

#include <optional>
#include <string>
#include <vector>

namespace habcert {

inline constexpr int kReportSchemaVersion = 1;

enum class OverallVerdict { CounterexampleConfirmed, NotACounterexample, HypothesisFailed, Inconclusive };
const char* to_string(OverallVerdict v);
OverallVerdict parse_overall_verdict(const std::string& s);
/// 0 for CONFIRMED and NOT_A_COUNTEREXAMPLE, 2 for INCONCLUSIVE, 3 for HYPOTHESIS_FAILED.
int exit_code_for(OverallVerdict v);

// Everything below is the serialized form: decimal and "p/q" strings, so that
// a parsed report compares equal to the one that was written.

struct IntervalText {
  std::string lo, hi, width;
  bool operator==(const IntervalText&) const = default;
};

struct RootText {
  std::string lo, hi;
  unsigned multiplicity = 1;
  bool exact = false;
  bool operator==(const RootText&) const = default;
};

struct CertificateText {
  std::string verdict;
  std::vector<std::string> polynomial;
  std::string domain_lo, domain_hi;
  bool zero_polynomial = false;
  std::vector<RootText> roots;
  std::string value_at_lo, value_at_hi;
  std::optional<std::string> negative_witness;  // "point: value"
  bool audited = false;
  bool operator==(const CertificateText&) const = default;
};

struct ShapeCheckText {
  std::string name;
  bool passed = false;
  bool required = false;
  std::string note;
  std::optional<CertificateText> certificate;
  bool operator==(const ShapeCheckText&) const = default;
};

struct ShapeSummary {
  std::string role;
  bool conformant = true;
  bool admissible = false;
  std::vector<ShapeCheckText> checks;
  bool sampled_convexity = false;
  bool operator==(const ShapeSummary&) const = default;
};

struct MarginSummary {
  std::string verdict;
  std::string reason;
  std::optional<std::string> baseline_coefficient;
  std::optional<std::string> baseline_power;
  bool via_fubini = false;
  std::vector<std::string> inner_polynomial;
  std::string inner_prefactor;
  std::optional<CertificateText> inner_certificate;
  std::vector<std::string> outer_polynomial;
  std::string outer_prefactor;
  std::optional<CertificateText> outer_certificate;
  std::string outer_A, outer_B;
  std::optional<IntervalText> witness_t;
  std::optional<std::string> fubini_deviation;
  bool operator==(const MarginSummary&) const = default;
};

struct ViolationSummary {
  std::string verdict;
  IntervalText lhs, rhs, margin;
  std::string rhs_closed_form;
  std::string quadrature_error, tail_error, constants_error, total_budget;
  std::string truncation;
  bool tail_closed_form = false;
  bool achieved = false;
  std::string tolerance;
  long evaluations = 0;
  bool operator==(const ViolationSummary&) const = default;
};

struct FunctionText {
  std::string source;  // "builtin" or "definition"
  std::string role, scale;
  unsigned power = 0;
  std::vector<std::string> knot_polynomial;
  std::string knot_bracket_lo, knot_bracket_hi;
  std::string normalization;
  std::vector<std::string> perturbation;
  bool operator==(const FunctionText&) const = default;
};

struct RunMetadata {
  int conjecture = 2;
  unsigned n = 2;
  std::string exponent, epsilon, tolerance, precision, timestamp, version;
  bool conformant = true;
  FunctionText function;
  bool operator==(const RunMetadata&) const = default;
};

struct ReportDocument {
  int schema_version = kReportSchemaVersion;
  RunMetadata run;
  std::optional<std::string> watermark;
  ShapeSummary shape_report;
  std::optional<MarginSummary> margin_certificate;
  std::optional<ViolationSummary> violation_report;
  std::vector<std::string> errors;
  std::string verdict;
  int exit_code = 0;
  bool operator==(const ReportDocument&) const = default;
};

/// Stable field order, two-space indent, trailing newline.
std::string report_to_json(const ReportDocument& doc);
/// Throws Error(Parse) on malformed input or a schema version mismatch.
ReportDocument parse_report(const std::string& json_text);
/// Throws Error(Io).
void write_report(const ReportDocument& doc, const std::string& path);

}  // namespace habcert
