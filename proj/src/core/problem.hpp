#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/bounds.hpp"
#include "core/constraints.hpp"
#include "core/dist.hpp"
#include "core/errors.hpp"
#include "core/montecarlo.hpp"

namespace sanov {

// A parsed problem document: the base distribution, sample size(s), the
// constraint set A, and optional extras used by individual commands.
struct ProblemSpec {
  Dist p = Dist::uniform(2);
  std::optional<int64_t> n;
  std::vector<int64_t> n_values;
  std::optional<ConstraintSet> constraints;
  std::optional<ConstraintSet> subset_constraints;
  std::optional<Dist> q;          // verify: the Q of the core identity (defaults to p)
  std::vector<Dist> test_points;  // iproject: Pythagorean probes
  uint64_t seed = 0;
  int64_t trials = 100000;
  int64_t budget = kDefaultTypeBudget;

  int64_t require_n(const char* command) const;
  const ConstraintSet& require_constraints() const;
};

// Parses and validates the spec JSON; messages carry the offending field path
// (or byte position for malformed JSON). SANOV_BUDGET supplies the budget when
// the document does not set one.
ProblemSpec parse_problem(const std::string& json_text);

// Command implementations; each returns the full report text (JSON, or CSV
// for the sweep) and throws sanov::Error on failure.
std::string run_exact(const ProblemSpec& spec);
std::string run_bounds(const ProblemSpec& spec, bool include_subset);
std::string run_iproject(const ProblemSpec& spec);
std::string run_sweep_csv(const ProblemSpec& spec);
std::string run_verify(const ProblemSpec& spec);
std::string run_mc(const ProblemSpec& spec);

// Test hook: substitutes a corrupted conditional marginal before the identity
// checks so negative controls can prove the checks have teeth.
std::string run_verify_with_omega(const ProblemSpec& spec,
                                  const std::optional<Dist>& omega_override);

// JSON error body emitted alongside nonzero exit codes.
std::string error_body_json(const Error& e);

}  // namespace sanov
