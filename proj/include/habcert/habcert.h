#ifndef HABCERT_H
#define HABCERT_H

/* C interface to the certifier. Every call returns a status; on failure
 * habcert_last_error() describes the problem (per thread). Objects returned
 * through out-parameters are owned by the caller and released with the
 * matching *_free function. Strings returned by accessors live as long as
 * the object they came from. */

#include <stddef.h>

#if defined(_WIN32)
#define HABCERT_API __declspec(dllexport)
#else
#define HABCERT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum habcert_status {
  HABCERT_OK = 0,
  HABCERT_E_INVALID_ARGUMENT = 1,
  HABCERT_E_PARSE = 2,
  HABCERT_E_DOMAIN = 3,
  HABCERT_E_ROLE_MISMATCH = 4,
  HABCERT_E_NOT_APPLICABLE = 5,
  HABCERT_E_IO = 6,
  HABCERT_E_INTERNAL = 7
} habcert_status;

typedef enum habcert_precision {
  HABCERT_PRECISION_STANDARD = 0,
  HABCERT_PRECISION_EXTENDED = 1
} habcert_precision;

typedef struct habcert_report habcert_report;
typedef struct habcert_sweep habcert_sweep;
typedef struct habcert_function habcert_function;

typedef struct habcert_verify_options {
  int conjecture;              /* 1, 2 or 3 */
  int n;                       /* 0 selects the default (2) */
  const char* exponent;        /* "p/q", NULL for the default */
  const char* epsilon;         /* "p/q", required */
  double tolerance;            /* 0 selects 1e-12 */
  habcert_precision precision;
  const char* timestamp;       /* NULL gives "unspecified" */
  const char* definition_json; /* NULL for the built-in family */
} habcert_verify_options;

typedef struct habcert_sweep_options {
  int conjecture;
  int n;
  const char* exponent;
  const char* epsilon_grid; /* "start:stop:step" */
  double tolerance;
  habcert_precision precision;
  const char* definition_json;
} habcert_sweep_options;

typedef struct habcert_emit_options {
  const char* function; /* "q", "h" or "S" */
  const char* epsilon;
  const char* range;    /* "a:b" */
  unsigned samples;
  const char* definition_json;
} habcert_emit_options;

HABCERT_API const char* habcert_version(void);
HABCERT_API const char* habcert_last_error(void);
HABCERT_API const char* habcert_status_string(habcert_status status);

HABCERT_API void habcert_verify_options_init(habcert_verify_options* options);
HABCERT_API habcert_status habcert_verify(const habcert_verify_options* options, habcert_report** out);

HABCERT_API const char* habcert_report_verdict(const habcert_report* report);
HABCERT_API int habcert_report_exit_code(const habcert_report* report);
HABCERT_API const char* habcert_report_json(const habcert_report* report);
HABCERT_API habcert_status habcert_report_write(const habcert_report* report, const char* path);
HABCERT_API habcert_status habcert_report_parse(const char* json, habcert_report** out);
/* 1 when the two documents are field-for-field identical. */
HABCERT_API int habcert_report_equal(const habcert_report* a, const habcert_report* b);
HABCERT_API void habcert_report_free(habcert_report* report);

HABCERT_API void habcert_sweep_options_init(habcert_sweep_options* options);
HABCERT_API habcert_status habcert_sweep_run(const habcert_sweep_options* options, habcert_sweep** out);
HABCERT_API size_t habcert_sweep_row_count(const habcert_sweep* sweep);
/* "" when row is out of range. */
HABCERT_API const char* habcert_sweep_row_verdict(const habcert_sweep* sweep, size_t row);
HABCERT_API const char* habcert_sweep_table(const habcert_sweep* sweep);
HABCERT_API const char* habcert_sweep_json(const habcert_sweep* sweep);
HABCERT_API int habcert_sweep_margins_increasing(const habcert_sweep* sweep);
HABCERT_API int habcert_sweep_exit_code(const habcert_sweep* sweep);
HABCERT_API void habcert_sweep_free(habcert_sweep* sweep);

HABCERT_API void habcert_emit_options_init(habcert_emit_options* options);
/* On success *csv is a heap string released with habcert_string_free. */
HABCERT_API habcert_status habcert_emit_csv(const habcert_emit_options* options, char** csv);
HABCERT_API void habcert_string_free(char* s);

HABCERT_API habcert_status habcert_function_builtin(const char* role, const char* epsilon, habcert_function** out);
HABCERT_API habcert_status habcert_function_from_definition(const char* json, const char* role, const char* epsilon,
                                                            habcert_function** out);
/* Enclosure [lo, hi] of f(x), x a rational string >= 0. */
HABCERT_API habcert_status habcert_function_eval(const habcert_function* f, const char* x, double width, double* lo,
                                                 double* hi);
HABCERT_API void habcert_function_free(habcert_function* f);

#ifdef __cplusplus
}
#endif

#endif
