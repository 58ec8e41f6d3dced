#include "habcert/habcert.h"

#include <cmath>
#include <cstring>
#include <new>
#include <string>

#include "habcert/definition.hpp"
#include "habcert/error.hpp"
#include "habcert/pipeline.hpp"

struct habcert_report {
  habcert::ReportDocument doc;
  std::string json;
};

struct habcert_sweep {
  habcert::SweepResult result;
  std::string table;
  std::string json;
  std::vector<std::string> verdicts;
};

struct habcert_function {
  habcert::FamilyFunction f;
};

namespace {

thread_local std::string last_error;

habcert_status status_for(habcert::ErrorKind k) {
  using habcert::ErrorKind;
  switch (k) {
    case ErrorKind::InvalidArgument: return HABCERT_E_INVALID_ARGUMENT;
    case ErrorKind::Parse: return HABCERT_E_PARSE;
    case ErrorKind::Domain: return HABCERT_E_DOMAIN;
    case ErrorKind::RoleMismatch: return HABCERT_E_ROLE_MISMATCH;
    case ErrorKind::NotApplicable: return HABCERT_E_NOT_APPLICABLE;
    case ErrorKind::Io: return HABCERT_E_IO;
  }
  return HABCERT_E_INTERNAL;
}

template <class F>
habcert_status guarded(F&& body) {
  last_error.clear();
  try {
    body();
    return HABCERT_OK;
  } catch (const habcert::Error& e) {
    last_error = e.what();
    return status_for(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown failure";
  }
  return HABCERT_E_INTERNAL;
}

void require(bool cond, const char* what) {
  if (!cond) throw habcert::Error(habcert::ErrorKind::InvalidArgument, what);
}

habcert::Formulation formulation(int c) {
  require(c >= 1 && c <= 3, "conjecture must be 1, 2 or 3");
  return static_cast<habcert::Formulation>(c - 1);
}

habcert::PrecisionMode precision(habcert_precision p) {
  return p == HABCERT_PRECISION_EXTENDED ? habcert::PrecisionMode::Extended : habcert::PrecisionMode::Standard;
}

std::optional<std::string> opt_string(const char* s) {
  if (!s) return std::nullopt;
  return std::string(s);
}

}  // namespace

extern "C" {

const char* habcert_version(void) { return habcert::kLibraryVersion; }

const char* habcert_last_error(void) { return last_error.c_str(); }

const char* habcert_status_string(habcert_status s) {
  switch (s) {
    case HABCERT_OK: return "ok";
    case HABCERT_E_INVALID_ARGUMENT: return "invalid argument";
    case HABCERT_E_PARSE: return "parse error";
    case HABCERT_E_DOMAIN: return "domain error";
    case HABCERT_E_ROLE_MISMATCH: return "role mismatch";
    case HABCERT_E_NOT_APPLICABLE: return "not applicable";
    case HABCERT_E_IO: return "i/o error";
    case HABCERT_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void habcert_verify_options_init(habcert_verify_options* o) {
  if (!o) return;
  *o = habcert_verify_options{};
  o->conjecture = 2;
  o->epsilon = "1";
  o->tolerance = 1e-12;
}

habcert_status habcert_verify(const habcert_verify_options* o, habcert_report** out) {
  return guarded([&] {
    require(o && out, "null argument");
    require(o->epsilon != nullptr, "epsilon is required");
    require(o->n >= 0, "n must be positive");
    habcert::VerifyOptions v;
    v.formulation = formulation(o->conjecture);
    if (o->n > 0) v.n = static_cast<unsigned>(o->n);
    if (o->exponent) v.exponent = habcert::parse_rational(o->exponent);
    v.epsilon = habcert::parse_rational(o->epsilon);
    if (o->tolerance != 0) v.tolerance = o->tolerance;
    v.precision = precision(o->precision);
    if (o->timestamp) v.timestamp = o->timestamp;
    v.definition_json = opt_string(o->definition_json);
    auto outcome = habcert::run_verify(v);
    auto* r = new habcert_report{std::move(outcome.document), {}};
    r->json = habcert::report_to_json(r->doc);
    *out = r;
  });
}

const char* habcert_report_verdict(const habcert_report* r) { return r ? r->doc.verdict.c_str() : ""; }
int habcert_report_exit_code(const habcert_report* r) { return r ? r->doc.exit_code : -1; }
const char* habcert_report_json(const habcert_report* r) { return r ? r->json.c_str() : ""; }

habcert_status habcert_report_write(const habcert_report* r, const char* path) {
  return guarded([&] {
    require(r && path, "null argument");
    habcert::write_report(r->doc, path);
  });
}

habcert_status habcert_report_parse(const char* json, habcert_report** out) {
  return guarded([&] {
    require(json && out, "null argument");
    auto* r = new habcert_report{habcert::parse_report(json), {}};
    r->json = habcert::report_to_json(r->doc);
    *out = r;
  });
}

int habcert_report_equal(const habcert_report* a, const habcert_report* b) { return a && b && a->doc == b->doc; }

void habcert_report_free(habcert_report* r) { delete r; }

void habcert_sweep_options_init(habcert_sweep_options* o) {
  if (!o) return;
  *o = habcert_sweep_options{};
  o->conjecture = 2;
  o->tolerance = 1e-12;
}

habcert_status habcert_sweep_run(const habcert_sweep_options* o, habcert_sweep** out) {
  return guarded([&] {
    require(o && out, "null argument");
    require(o->epsilon_grid != nullptr, "epsilon grid is required");
    require(o->n >= 0, "n must be positive");
    habcert::SweepOptions s;
    s.formulation = formulation(o->conjecture);
    if (o->n > 0) s.n = static_cast<unsigned>(o->n);
    if (o->exponent) s.exponent = habcert::parse_rational(o->exponent);
    s.grid = habcert::parse_epsilon_grid(o->epsilon_grid);
    if (o->tolerance != 0) s.tolerance = o->tolerance;
    s.precision = precision(o->precision);
    s.definition_json = opt_string(o->definition_json);
    auto* r = new habcert_sweep{habcert::run_sweep(s), {}, {}, {}};
    r->table = r->result.table();
    r->json = r->result.to_json();
    for (const auto& row : r->result.rows) r->verdicts.emplace_back(habcert::to_string(row.verdict));
    *out = r;
  });
}

size_t habcert_sweep_row_count(const habcert_sweep* s) { return s ? s->result.rows.size() : 0; }
const char* habcert_sweep_row_verdict(const habcert_sweep* s, size_t row) {
  return s && row < s->verdicts.size() ? s->verdicts[row].c_str() : "";
}
const char* habcert_sweep_table(const habcert_sweep* s) { return s ? s->table.c_str() : ""; }
const char* habcert_sweep_json(const habcert_sweep* s) { return s ? s->json.c_str() : ""; }
int habcert_sweep_margins_increasing(const habcert_sweep* s) { return s && s->result.margins_increasing; }
int habcert_sweep_exit_code(const habcert_sweep* s) { return s ? s->result.exit_code : -1; }
void habcert_sweep_free(habcert_sweep* s) { delete s; }

void habcert_emit_options_init(habcert_emit_options* o) {
  if (!o) return;
  *o = habcert_emit_options{};
  o->samples = 5;
}

habcert_status habcert_emit_csv(const habcert_emit_options* o, char** csv) {
  return guarded([&] {
    require(o && csv, "null argument");
    require(o->function && o->epsilon && o->range, "function, epsilon and range are required");
    habcert::EmitOptions e;
    e.role = habcert::parse_role(o->function);
    e.epsilon = habcert::parse_rational(o->epsilon);
    std::tie(e.range_lo, e.range_hi) = habcert::parse_range(o->range);
    e.samples = o->samples;
    e.definition_json = opt_string(o->definition_json);
    const std::string text = habcert::emit_csv(e);
    char* buf = new char[text.size() + 1];
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *csv = buf;
  });
}

void habcert_string_free(char* s) { delete[] s; }

habcert_status habcert_function_builtin(const char* role, const char* epsilon, habcert_function** out) {
  return guarded([&] {
    require(role && epsilon && out, "null argument");
    const habcert::Role r = habcert::parse_role(role);
    const habcert::FamilyParams p{habcert::parse_rational(epsilon)};
    habcert::FamilyFunction f = r == habcert::Role::Q   ? habcert::build_q(p)
                                : r == habcert::Role::H ? habcert::build_h(p)
                                                        : habcert::build_S(p);
    *out = new habcert_function{std::move(f)};
  });
}

habcert_status habcert_function_from_definition(const char* json, const char* role, const char* epsilon,
                                                habcert_function** out) {
  return guarded([&] {
    require(json && role && out, "null argument");
    std::optional<habcert::Rational> eps;
    if (epsilon) eps = habcert::parse_rational(epsilon);
    *out = new habcert_function{habcert::parse_definition(json, habcert::parse_role(role), eps)};
  });
}

habcert_status habcert_function_eval(const habcert_function* f, const char* x, double width, double* lo, double* hi) {
  return guarded([&] {
    require(f && x && lo && hi, "null argument");
    const habcert::Interval v = habcert::eval_function(f->f, habcert::parse_rational(x), width > 0 ? width : 1e-15);
    // Outward to double.
    *lo = std::nextafter(static_cast<double>(v.lower()), -HUGE_VAL);
    *hi = std::nextafter(static_cast<double>(v.upper()), HUGE_VAL);
    if (v.is_point() && static_cast<long double>(static_cast<double>(v.lower())) == v.lower()) *lo = *hi = static_cast<double>(v.lower());
  });
}

void habcert_function_free(habcert_function* f) { delete f; }

}  // extern "C"
