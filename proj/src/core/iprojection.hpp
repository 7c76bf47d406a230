#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "core/constraints.hpp"
#include "core/dist.hpp"

namespace sanov {

// I-projection of P onto the constraint set: the unique minimizer of D(Q||P)
// over the closed convex feasible polytope, in exponential-tilt form
// q*(x) ∝ p(x) exp(sum_i lambda_i f_i(x)).
struct IProjection {
  Dist q_star = Dist::uniform(2);
  std::vector<double> duals;                 // one per constraint; 0 when inactive
  InfoValue divergence;                      // D(q_star || p)
  std::vector<bool> active;                  // per constraint: tight at the solution
  std::vector<double> constraint_residuals;  // <f, q*> - alpha, per constraint
  double dual_gradient_max = 0.0;
  int newton_iterations = 0;
};

IProjection project(const Dist& p, const ConstraintSet& a);

// Signed residual D(q||p) - D(q||q*) - D(q*||p) of the Pythagorean
// (in)equality; >= 0 for convex sets, 0 for linear families.
enum class PythagoreanKind { finite, matched_infinity, unmatched_infinity };

struct PythagoreanResult {
  PythagoreanKind kind = PythagoreanKind::finite;
  double residual = 0.0;  // meaningful only when kind == finite
  InfoValue d_q_p;
  InfoValue d_q_qstar;
  InfoValue d_qstar_p;
};

PythagoreanResult pythagorean_residual(const Dist& p, const ConstraintSet& a, const Dist& q);

// Concave dual of the equality-constrained projection, exposed for testing:
// value = sum_i lambda_i alpha_i - ln sum_x p(x) exp(sum_i lambda_i f_i(x)),
// gradient_i = alpha_i - E_{Q_lambda}[f_i].
struct DualEval {
  double value = 0.0;
  std::vector<double> gradient;
};

DualEval dual_value_and_gradient(const Dist& p, const ConstraintSet& a,
                                 std::span<const double> lambdas);

}  // namespace sanov
