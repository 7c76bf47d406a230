/* C API for the finite-sample tail probability library.
 *
 * Usage: parse a problem document into an opaque handle, optionally override
 * budget/seed/trials, run one of the commands, read the report text, free the
 * handles. All functions returning sanov_status use 0 for success; on error
 * the thread-local message and JSON error body describe what went wrong.
 */
#ifndef SANOV_H
#define SANOV_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define SANOV_API __declspec(dllexport)
#else
#define SANOV_API __attribute__((visibility("default")))
#endif

/* Status values double as CLI exit codes. */
typedef enum sanov_status {
  SANOV_OK = 0,
  SANOV_ERR_INTERNAL = 1,
  SANOV_ERR_VALIDATION = 2,
  SANOV_ERR_CAPACITY = 3,
  SANOV_ERR_EMPTY_EVENT = 4,
  SANOV_ERR_INFEASIBLE = 5
} sanov_status;

typedef struct sanov_problem sanov_problem;
typedef struct sanov_report sanov_report;

SANOV_API const char* sanov_version(void);

/* Problem lifecycle. The input is the spec JSON document. */
SANOV_API sanov_status sanov_problem_from_json(const char* json_text, sanov_problem** out);
SANOV_API void sanov_problem_free(sanov_problem* problem);

/* Overrides applied on top of the parsed document. */
SANOV_API sanov_status sanov_problem_set_budget(sanov_problem* problem, int64_t max_types);
SANOV_API sanov_status sanov_problem_set_seed(sanov_problem* problem, uint64_t seed);
SANOV_API sanov_status sanov_problem_set_trials(sanov_problem* problem, int64_t trials);

/* Commands. Each produces a report handle owned by the caller. */
SANOV_API sanov_status sanov_run_exact(const sanov_problem* problem, sanov_report** out);
SANOV_API sanov_status sanov_run_bounds(const sanov_problem* problem, int include_subset,
                                        sanov_report** out);
SANOV_API sanov_status sanov_run_iproject(const sanov_problem* problem, sanov_report** out);
SANOV_API sanov_status sanov_run_sweep(const sanov_problem* problem, sanov_report** out);
SANOV_API sanov_status sanov_run_verify(const sanov_problem* problem, sanov_report** out);
SANOV_API sanov_status sanov_run_mc(const sanov_problem* problem, sanov_report** out);

/* Report accessors. The text is JSON, except sweep reports which are CSV. */
SANOV_API const char* sanov_report_text(const sanov_report* report);
SANOV_API const char* sanov_report_mime(const sanov_report* report);
SANOV_API void sanov_report_free(sanov_report* report);

/* Thread-local description of the most recent failure on this thread.
 * Both pointers stay valid until the next failing call on the same thread. */
SANOV_API const char* sanov_last_error_message(void);
SANOV_API const char* sanov_last_error_json(void);

#ifdef __cplusplus
}
#endif

#endif /* SANOV_H */
