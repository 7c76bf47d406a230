#pragma once

#include <cstdint>

#include "core/constraints.hpp"
#include "core/dist.hpp"
#include "core/typespace.hpp"

namespace sanov {

// Everything attached to the conditional law mu_A of an n-sample given that
// its empirical measure lands in A. mu_A is never materialized over the k^n
// sequences: it is exchangeable and uniform within each type class, so all
// of these reduce to sums over member types weighted by Pr(type | A).
struct ConditionalSummary {
  int64_t n = 0;
  double log_prob_event = 0.0;  // ln P(empirical measure in A), <= 0
  Dist omega = Dist::uniform(2);  // single-coordinate marginal of mu_A
  InfoValue total_correlation;  // D(mu_A || omega^n)
  InfoValue entropy_mu;         // H(mu_A)
  InfoValue kl_omega_p;         // D(omega || P)
  uint64_t member_types = 0;    // member types with positive probability
  uint64_t total_types = 0;
};

ConditionalSummary summarize(const Dist& p, int64_t n, const ConstraintSet& a,
                             int64_t budget = kDefaultTypeBudget);

// Residual of the core identity D(mu_A||Q^n) - D(mu_A||omega^n) = n D(omega||Q).
// When Q vanishes on a symbol charged by the conditional law, both sides are
// infinite; that is reported as a matched infinity, not an error.
struct CoreIdentityResult {
  bool matched_infinity = false;
  double lhs = 0.0;  // D(mu_A||Q^n) - D(mu_A||omega^n)
  double rhs = 0.0;  // n D(omega||Q)
  double residual = 0.0;
};

CoreIdentityResult core_identity_check(const Dist& p, int64_t n, const ConstraintSet& a,
                                       const Dist& q, int64_t budget = kDefaultTypeBudget);

}  // namespace sanov
