#ifndef NHGALOIS_H
#define NHGALOIS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(NHG_BUILDING_LIBRARY)
#    define NHG_API __declspec(dllexport)
#  else
#    define NHG_API __declspec(dllimport)
#  endif
#else
#  define NHG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nhg_status {
  NHG_OK = 0,
  NHG_ERR_PARSE = 1,
  NHG_ERR_SCHEMA = 2,
  NHG_ERR_IO = 3,
  NHG_ERR_MISSING_SECTION = 4,
  NHG_ERR_SOLUTION_CHECK = 5,
  NHG_ERR_UNSUPPORTED = 6,
  NHG_ERR_NUMERIC = 7,
  NHG_ERR_INVALID_ARGUMENT = 8,
  NHG_ERR_INTERNAL = 9
} nhg_status;

/* Zero-test outcomes, strongest first. */
typedef enum nhg_zero_verdict {
  NHG_EXACT_ZERO = 0,
  NHG_PROBABLY_ZERO = 1,
  NHG_NONZERO = 2
} nhg_zero_verdict;

typedef struct nhg_problem nhg_problem;
typedef struct nhg_report nhg_report;

NHG_API const char* nhg_version(void);
NHG_API const char* nhg_status_string(nhg_status status);

/* Details of the last failure on the calling thread. The strings stay valid
   until the next failing call on that thread. */
NHG_API const char* nhg_last_error(void);
NHG_API const char* nhg_last_error_field(void);
/* Character offset for parse errors, -1 otherwise. */
NHG_API long nhg_last_error_position(void);

/* Problem definitions (JSON). */
NHG_API nhg_status nhg_problem_load(const char* path, nhg_problem** out);
NHG_API nhg_status nhg_problem_parse(const char* json_text, nhg_problem** out);
NHG_API void nhg_problem_free(nhg_problem* problem);

/* Option overrides; invalid values leave the problem unchanged. */
NHG_API nhg_status nhg_problem_set_order(nhg_problem* problem, int order);
NHG_API nhg_status nhg_problem_set_base_point(nhg_problem* problem, double re, double im);
NHG_API nhg_status nhg_problem_set_rtol(nhg_problem* problem, double rtol);
NHG_API nhg_status nhg_problem_set_tolerance(nhg_problem* problem, double tolerance);
NHG_API nhg_status nhg_problem_set_word_length(nhg_problem* problem, int word_length);
NHG_API nhg_status nhg_problem_set_samples(nhg_problem* problem, int samples);
NHG_API nhg_status nhg_problem_set_seed(nhg_problem* problem, uint64_t seed);

/* Runs lift, certify, ve, monodromy, analyze or lift-compare. A report is
   produced for every known command, including analyses that stop on an
   error; NHG_ERR_INVALID_ARGUMENT is returned only for bad arguments. */
NHG_API nhg_status nhg_run(const nhg_problem* problem, const char* command, nhg_report** out);
/* Error report built from the calling thread's last failure, for problems
   that could not be loaded. */
NHG_API nhg_status nhg_error_report(const char* command, nhg_report** out);

/* 0 completed (pass or inconclusive), 1 a verdict failed, 2 input error. */
NHG_API int nhg_report_exit_code(const nhg_report* report);
/* Verdict string: "pass", "fail", "inconclusive" or "error". */
NHG_API const char* nhg_report_status(const nhg_report* report);
/* Serialized report owned by the handle. With include_timing = 0 the
   timing field is omitted, giving byte-stable output for fixed input. */
NHG_API const char* nhg_report_json(nhg_report* report, int indent, int include_timing);
NHG_API void nhg_report_free(nhg_report* report);

/* Expression utilities over the comma-separated variable list. Returned
   strings are released with nhg_string_free. */
NHG_API nhg_status nhg_normalize(const char* expression, const char* variables, char** out);
NHG_API nhg_status nhg_differentiate(const char* expression, const char* variables, const char* variable, char** out);
NHG_API nhg_status nhg_is_zero(const char* expression, const char* variables, nhg_zero_verdict* out);
/* h_X and the lifted field components separated by newlines. */
NHG_API nhg_status nhg_cotangent_lift(const char* const* components, size_t count, const char* variables,
                                      char** hamiltonian, char** lifted);
NHG_API void nhg_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
