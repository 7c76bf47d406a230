#include "core/bounds.hpp"

#include <cmath>
#include <string>

#include "core/errors.hpp"
#include "core/numeric.hpp"
#include "core/polytope.hpp"

namespace sanov {

InfoValue max_cross_entropy(const Dist& p, const ConstraintSet& a) {
  if (p.size() != a.alphabet_size()) {
    throw Error(ErrorKind::validation, "max_cross_entropy: alphabet size mismatch");
  }
  std::vector<std::vector<double>> vertices = feasible_vertices(a);
  if (vertices.empty()) {
    throw Error(ErrorKind::infeasible, "constraint set is infeasible: the polytope is empty");
  }
  // linear objective sum_x q_x ln(1/p_x): the maximum sits at a vertex
  double best = kNegInfinity;
  for (const std::vector<double>& q : vertices) {
    KahanSum value;
    bool infinite = false;
    for (int64_t u = 0; u < p.size(); ++u) {
      double qu = q[static_cast<size_t>(u)];
      if (qu <= 1e-12) continue;
      if (p[u] == 0.0) {
        infinite = true;
        break;
      }
      value.add(-qu * std::log(p[u]));
    }
    if (infinite) return InfoValue::infinity();
    best = std::max(best, value.value());
  }
  return InfoValue::finite(best);
}

BoundsReport full_report(const Dist& p, int64_t n, const ConstraintSet& a, int64_t budget) {
  BoundsReport r;
  r.n = n;
  try {
    r.conditional = summarize(p, n, a, budget);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::empty_event) {
      // distinguish "no type at this n" from an outright infeasible set:
      // the projection throws the certified infeasibility error if there is one
      project(p, a);
    }
    throw;
  }
  r.projection = project(p, a);
  r.max_cross = max_cross_entropy(p, a);

  r.exact_rate = r.conditional.log_prob_event / static_cast<double>(n);
  r.ub_marginal = -r.conditional.kl_omega_p.nats();
  r.ub_iproj = -r.projection.divergence.nats();
  r.tc_slack = r.conditional.total_correlation.nats() / static_cast<double>(n);

  InfoValue hcross = cross_entropy(r.conditional.omega, p);
  if (hcross.is_infinite()) {
    throw Error(ErrorKind::internal, "cross entropy H(omega,P) infinite on event support");
  }
  r.lb_cross = -hcross.nats();
  double h_omega = entropy(r.conditional.omega).nats();
  r.ratio_diag = hcross.nats() > 0.0 ? h_omega / hcross.nats() : 0.0;
  return r;
}

SubsetBound subset_report(const Dist& p, int64_t n, const ConstraintSet& a,
                          const ConstraintSet& b, int64_t budget) {
  if (a.alphabet_size() != b.alphabet_size() || p.size() != a.alphabet_size()) {
    throw Error(ErrorKind::validation, "subset_report: alphabet size mismatch");
  }

  ConditionalSummary sub = summarize(p, n, b, budget);

  // spot-check the asserted B ⊆ A on the witnesses that matter at this n:
  // every member type of B, plus B's conditional marginal
  {
    std::vector<Dist> samples;
    TypeStream stream(b.alphabet_size(), n, budget);
    TypeVector t;
    while (stream.next(t)) {
      if (b.contains_type(t)) samples.push_back(t.as_dist());
    }
    samples.push_back(sub.omega);
    if (!is_subset_witness(b, a, samples)) {
      throw Error(ErrorKind::validation,
                  "subset relation refuted: a member type of B violates A");
    }
  }

  IProjection proj = project(p, a);

  // D(mu_B||P*^n) = D(mu_B||omega_B^n) + n D(omega_B||P*)  (core identity, Q = P*)
  InfoValue d_omega_pstar = relative_entropy(sub.omega, proj.q_star);
  if (d_omega_pstar.is_infinite()) {
    throw Error(ErrorKind::internal,
                "omega_B escapes the support of the I-projection; B is not inside A");
  }

  SubsetBound out;
  out.lhs = sub.log_prob_event / static_cast<double>(n);
  out.rhs = -proj.divergence.nats() -
            sub.total_correlation.nats() / static_cast<double>(n) - d_omega_pstar.nats();
  out.residual = out.lhs - out.rhs;
  return out;
}

std::vector<SweepEntry> sweep(const Dist& p, const ConstraintSet& a,
                              std::span<const int64_t> n_values, int64_t budget) {
  std::vector<SweepEntry> entries;
  entries.reserve(n_values.size());
  for (int64_t n : n_values) {
    SweepEntry e;
    e.n = n;
    try {
      e.report = full_report(p, n, a, budget);
      e.gap_to_asymptote = e.report->exact_rate + e.report->projection.divergence.nats();
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::empty_event) throw;
      e.empty_event = true;
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

}  // namespace sanov
