#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "core/conditional.hpp"
#include "core/constraints.hpp"
#include "core/dist.hpp"
#include "core/iprojection.hpp"

namespace sanov {

// Subset bound: lhs = (1/n) ln P(empirical in B),
// rhs = -D(P*_A||P) - (1/n) D(mu_B || P*_A^n); lhs <= rhs, with equality for
// linear families with B = A.
struct SubsetBound {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;  // lhs - rhs
};

// One row of the finite-sample picture: the exact rate with its upper and
// lower bounds, the total-correlation slack, and the bound-ratio diagnostic.
struct BoundsReport {
  int64_t n = 0;
  double exact_rate = 0.0;   // (1/n) ln P(empirical in A)
  double ub_marginal = 0.0;  // -D(omega||P), from dropping the total correlation
  double ub_iproj = 0.0;     // -D(P*||P), from projecting the marginal onto A
  double lb_cross = 0.0;     // -H(omega, P), from dropping the conditional entropy
  InfoValue max_cross;       // max_{Q in A} H(Q, P); the outer lower bound is its negation
  double tc_slack = 0.0;     // (1/n) D(mu_A || omega^n)
  double ratio_diag = 0.0;   // H(omega) / H(omega, P); 0 when the denominator vanishes
  ConditionalSummary conditional;
  IProjection projection;
  std::optional<SubsetBound> subset_bound;

  double lb_maxcross() const { return -max_cross.as_double(); }
};

BoundsReport full_report(const Dist& p, int64_t n, const ConstraintSet& a,
                         int64_t budget = kDefaultTypeBudget);

SubsetBound subset_report(const Dist& p, int64_t n, const ConstraintSet& a,
                          const ConstraintSet& b, int64_t budget = kDefaultTypeBudget);

// Exact maximum of the linear functional H(Q,P) over the feasible polytope,
// by vertex enumeration; infinite if the polytope reaches a p-null symbol.
InfoValue max_cross_entropy(const Dist& p, const ConstraintSet& a);

struct SweepEntry {
  int64_t n = 0;
  bool empty_event = false;
  std::optional<BoundsReport> report;
  double gap_to_asymptote = 0.0;  // exact_rate + D(P*||P); 0 for skipped entries
};

std::vector<SweepEntry> sweep(const Dist& p, const ConstraintSet& a,
                              std::span<const int64_t> n_values,
                              int64_t budget = kDefaultTypeBudget);

}  // namespace sanov
