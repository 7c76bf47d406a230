#include "sanov.h"

#include <exception>
#include <new>
#include <string>

#include "core/errors.hpp"
#include "core/problem.hpp"

struct sanov_problem {
  sanov::ProblemSpec spec;
};

struct sanov_report {
  std::string text;
  const char* mime;
};

namespace {

thread_local std::string g_last_error_message;
thread_local std::string g_last_error_json;

sanov_status record_error(const sanov::Error& e) {
  g_last_error_message = e.what();
  g_last_error_json = sanov::error_body_json(e);
  return static_cast<sanov_status>(sanov::error_exit_code(e.kind()));
}

sanov_status record_unexpected(const char* what) {
  sanov::Error e(sanov::ErrorKind::internal, what);
  return record_error(e);
}

template <typename Fn>
sanov_status guarded(Fn&& fn) {
  try {
    fn();
    return SANOV_OK;
  } catch (const sanov::Error& e) {
    return record_error(e);
  } catch (const std::bad_alloc&) {
    return record_unexpected("out of memory");
  } catch (const std::exception& e) {
    return record_unexpected(e.what());
  } catch (...) {
    return record_unexpected("unknown failure");
  }
}

sanov_status run_command(const sanov_problem* problem, sanov_report** out,
                         std::string (*fn)(const sanov::ProblemSpec&), const char* mime) {
  if (out != nullptr) *out = nullptr;
  if (problem == nullptr || out == nullptr) {
    return record_unexpected("null argument");
  }
  return guarded([&] {
    std::string text = fn(problem->spec);
    *out = new sanov_report{std::move(text), mime};
  });
}

constexpr const char* kMimeJson = "application/json";
constexpr const char* kMimeCsv = "text/csv";

}  // namespace

extern "C" {

const char* sanov_version(void) { return "0.1.0"; }

sanov_status sanov_problem_from_json(const char* json_text, sanov_problem** out) {
  if (out != nullptr) *out = nullptr;
  if (json_text == nullptr || out == nullptr) {
    return record_unexpected("null argument");
  }
  return guarded([&] {
    sanov::ProblemSpec spec = sanov::parse_problem(json_text);
    *out = new sanov_problem{std::move(spec)};
  });
}

void sanov_problem_free(sanov_problem* problem) { delete problem; }

sanov_status sanov_problem_set_budget(sanov_problem* problem, int64_t max_types) {
  if (problem == nullptr) return record_unexpected("null argument");
  return guarded([&] {
    if (max_types < 1) {
      throw sanov::Error(sanov::ErrorKind::validation, "budget must be >= 1");
    }
    problem->spec.budget = max_types;
  });
}

sanov_status sanov_problem_set_seed(sanov_problem* problem, uint64_t seed) {
  if (problem == nullptr) return record_unexpected("null argument");
  problem->spec.seed = seed;
  return SANOV_OK;
}

sanov_status sanov_problem_set_trials(sanov_problem* problem, int64_t trials) {
  if (problem == nullptr) return record_unexpected("null argument");
  return guarded([&] {
    if (trials < 1) {
      throw sanov::Error(sanov::ErrorKind::validation, "trials must be >= 1");
    }
    problem->spec.trials = trials;
  });
}

sanov_status sanov_run_exact(const sanov_problem* problem, sanov_report** out) {
  return run_command(problem, out, sanov::run_exact, kMimeJson);
}

sanov_status sanov_run_bounds(const sanov_problem* problem, int include_subset,
                              sanov_report** out) {
  if (out != nullptr) *out = nullptr;
  if (problem == nullptr || out == nullptr) {
    return record_unexpected("null argument");
  }
  return guarded([&] {
    std::string text = sanov::run_bounds(problem->spec, include_subset != 0);
    *out = new sanov_report{std::move(text), kMimeJson};
  });
}

sanov_status sanov_run_iproject(const sanov_problem* problem, sanov_report** out) {
  return run_command(problem, out, sanov::run_iproject, kMimeJson);
}

sanov_status sanov_run_sweep(const sanov_problem* problem, sanov_report** out) {
  return run_command(problem, out, sanov::run_sweep_csv, kMimeCsv);
}

sanov_status sanov_run_verify(const sanov_problem* problem, sanov_report** out) {
  return run_command(problem, out, sanov::run_verify, kMimeJson);
}

sanov_status sanov_run_mc(const sanov_problem* problem, sanov_report** out) {
  return run_command(problem, out, sanov::run_mc, kMimeJson);
}

const char* sanov_report_text(const sanov_report* report) {
  return report == nullptr ? "" : report->text.c_str();
}

const char* sanov_report_mime(const sanov_report* report) {
  return report == nullptr ? "" : report->mime;
}

void sanov_report_free(sanov_report* report) { delete report; }

const char* sanov_last_error_message(void) { return g_last_error_message.c_str(); }

const char* sanov_last_error_json(void) { return g_last_error_json.c_str(); }

}  // extern "C"
