#pragma once

#include <optional>
#include <string>
#include <vector>

#include "habcert/conjecture.hpp"
#include "habcert/family.hpp"
#include "habcert/interval.hpp"
#include "habcert/numeric.hpp"

namespace habcert {

struct RhsBound {
  ConjectureParams params;
  /// RHS = coefficient·π.
  Rational coefficient;
  Interval enclosure;
  std::string closed_form() const;
};

RhsBound rhs_bound(const ConjectureParams& params, double width = 1e-30);

/// ∫_T^∞ scale·t^power·w(t) dt for the pure-power tail of f. Uses the closed
/// forms when (formulation, exponent, power) is one of (C2, 2, 2), (C1, 4, 4),
/// (C3, 2, 1); otherwise quadrature on [T, X] plus the bound obtained from
/// w(t) <= t^(−2·exponent)·(…) on [X, ∞).
struct TailEvaluation {
  Interval enclosure;
  bool closed_form = false;
  Rational cutoff;  // X for the quadrature fallback
};

TailEvaluation tail_integral(const Rational& scale, unsigned power, const ConjectureParams& params, const Rational& T,
                             double tol = 1e-14, PrecisionMode mode = PrecisionMode::Standard);

/// The three closed forms at the standard scales: 3(π/2 − atan T²),
/// (3/4)(π/2 − atan T⁴ + T⁴/(1 + T⁸)), 6π − 6T²·ln(1 + T⁻⁴) − 12·atan T².
/// Throws Error(NotApplicable) for other exponents.
Interval tail_closed_form(const ConjectureParams& params, const Rational& T);

struct ErrorBudget {
  double quadrature = 0;
  double tail = 0;
  double constants = 0;
  double total() const { return quadrature + tail + constants; }
};

struct ConclusionEvaluation {
  Interval enclosure;
  ErrorBudget budget;
  Rational truncation;
  bool tail_closed_form = false;
  bool achieved = true;  // total width within tol and no panel budget exhausted
  long evaluations = 0;
};

/// ∫₀^∞ f·w split at the knot and T (default max(10, ⌈knot⌉)).
ConclusionEvaluation conclusion_lhs(const FamilyFunction& f, const ConjectureParams& params, double tol = 1e-12,
                                    PrecisionMode mode = PrecisionMode::Standard,
                                    std::optional<Rational> truncation = std::nullopt);

enum class ConclusionVerdict { Violated, Satisfied, EqualityWithinTol, Inconclusive };
const char* to_string(ConclusionVerdict v);

struct ViolationReport {
  ConjectureParams params;
  Rational epsilon;
  ConclusionEvaluation lhs;
  RhsBound rhs;
  Interval margin;  // lhs − rhs
  double total_budget = 0;
  double tolerance = 0;
  ConclusionVerdict verdict = ConclusionVerdict::Inconclusive;
};

/// VIOLATED needs margin.lower > 0 and > 10·budget; SATISFIED needs
/// margin.upper < 0; EQUALITY_WITHIN_TOL needs 0 ∈ margin with width < tol.
ViolationReport violation_report(const FamilyFunction& f, const ConjectureParams& params, double tol = 1e-12,
                                 PrecisionMode mode = PrecisionMode::Standard);

struct LinearityCheck {
  std::vector<Rational> epsilons;
  std::vector<Interval> margins;
  /// margin midpoint / ε
  std::vector<long double> ratios;
  long double max_relative_deviation = 0;
  /// Largest deviation explainable by the enclosure widths.
  long double error_allowance = 0;
};

/// margin(ε)/ε against the first entry of eps_list (each ε != 0).
LinearityCheck epsilon_linearity_check(const FamilyFunction& f, const ConjectureParams& params,
                                       const std::vector<Rational>& eps_list, double tol = 1e-12,
                                       PrecisionMode mode = PrecisionMode::Standard);

}  // namespace habcert
