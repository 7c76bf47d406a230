#include "core/iprojection.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/errors.hpp"
#include "core/linalg.hpp"
#include "core/numeric.hpp"
#include "core/polytope.hpp"

namespace sanov {

namespace {

struct Row {
  const std::vector<double>* f;
  double alpha;
  int64_t index;  // position in the original constraint list
};

double row_scale(const std::vector<double>& f, double alpha) {
  double s = std::max(1.0, std::abs(alpha));
  for (double v : f) s = std::max(s, std::abs(v));
  return s;
}

struct TiltEval {
  double log_z = 0.0;
  std::vector<double> q;         // full alphabet length; zero off support
  double value = 0.0;            // dual objective
  std::vector<double> gradient;  // alpha_i - E_q[f_i]
};

TiltEval eval_tilt(const Dist& p, const std::vector<int64_t>& support,
                   const std::vector<Row>& rows, const std::vector<double>& lambda) {
  const int64_t k = p.size();
  TiltEval ev;
  std::vector<double> scores(support.size());
  LogSumExp lse;
  for (size_t s = 0; s < support.size(); ++s) {
    int64_t x = support[s];
    double score = std::log(p[x]);
    for (size_t i = 0; i < rows.size(); ++i) {
      score += lambda[i] * (*rows[i].f)[static_cast<size_t>(x)];
    }
    scores[s] = score;
    lse.add(score);
  }
  ev.log_z = lse.value();
  ev.q.assign(static_cast<size_t>(k), 0.0);
  for (size_t s = 0; s < support.size(); ++s) {
    ev.q[static_cast<size_t>(support[s])] = std::exp(scores[s] - ev.log_z);
  }
  KahanSum value;
  ev.gradient.resize(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    value.add(lambda[i] * rows[i].alpha);
    KahanSum mean;
    for (int64_t x : support) {
      mean.add(ev.q[static_cast<size_t>(x)] * (*rows[i].f)[static_cast<size_t>(x)]);
    }
    ev.gradient[i] = rows[i].alpha - mean.value();
  }
  ev.value = value.value() - ev.log_z;
  return ev;
}

// covariance of the constraint functions under q, restricted to the support
Matrix tilt_covariance(const std::vector<double>& q, const std::vector<int64_t>& support,
                       const std::vector<Row>& rows) {
  const size_t m = rows.size();
  std::vector<double> mean(m, 0.0);
  for (size_t i = 0; i < m; ++i) {
    KahanSum acc;
    for (int64_t x : support) acc.add(q[static_cast<size_t>(x)] * (*rows[i].f)[static_cast<size_t>(x)]);
    mean[i] = acc.value();
  }
  Matrix cov(static_cast<int64_t>(m), static_cast<int64_t>(m));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = i; j < m; ++j) {
      KahanSum acc;
      for (int64_t x : support) {
        double fi = (*rows[i].f)[static_cast<size_t>(x)] - mean[i];
        double fj = (*rows[j].f)[static_cast<size_t>(x)] - mean[j];
        acc.add(q[static_cast<size_t>(x)] * fi * fj);
      }
      cov.at(static_cast<int64_t>(i), static_cast<int64_t>(j)) = acc.value();
      cov.at(static_cast<int64_t>(j), static_cast<int64_t>(i)) = acc.value();
    }
  }
  return cov;
}

struct DualSolve {
  std::vector<double> lambda;
  TiltEval eval;
  int iterations = 0;
  bool diverged = false;  // dual unbounded: no feasible point on this support
  double gradient_max_normalized = 0.0;
};

constexpr int kMaxNewtonIterations = 200;

DualSolve solve_dual(const Dist& p, const std::vector<int64_t>& support,
                     const std::vector<Row>& rows) {
  const size_t m = rows.size();
  DualSolve out;
  out.lambda.assign(m, 0.0);
  std::vector<double> scales(m);
  for (size_t i = 0; i < m; ++i) scales[i] = row_scale(*rows[i].f, rows[i].alpha);

  auto normalized_gmax = [&](const std::vector<double>& g) {
    double gmax = 0.0;
    for (size_t i = 0; i < m; ++i) gmax = std::max(gmax, std::abs(g[i]) / scales[i]);
    return gmax;
  };

  out.eval = eval_tilt(p, support, rows, out.lambda);
  if (m == 0) return out;

  std::vector<double> best_lambda = out.lambda;
  TiltEval best_eval = out.eval;
  double best_gmax = normalized_gmax(out.eval.gradient);
  int best_iteration = 0;

  for (int iter = 0; iter < kMaxNewtonIterations; ++iter) {
    out.iterations = iter;
    double gmax = normalized_gmax(out.eval.gradient);
    if (gmax < best_gmax) {
      best_gmax = gmax;
      best_lambda = out.lambda;
      best_eval = out.eval;
      best_iteration = iter;
    }
    if (gmax <= 1e-13) {
      out.gradient_max_normalized = gmax;
      return out;
    }
    // stagnation: quadratic convergence is long gone, keep the best iterate
    if (iter - best_iteration > 15) break;

    double lambda_max = 0.0;
    for (double l : out.lambda) lambda_max = std::max(lambda_max, std::abs(l));
    if ((lambda_max > 1e6 && gmax > 1e-8) || out.eval.value > 1e8) {
      out.diverged = true;
      out.gradient_max_normalized = gmax;
      return out;
    }

    Matrix cov = tilt_covariance(out.eval.q, support, rows);
    double diag_scale = 0.0;
    for (size_t i = 0; i < m; ++i) {
      diag_scale = std::max(diag_scale, cov.at(static_cast<int64_t>(i), static_cast<int64_t>(i)));
    }

    // Newton direction with escalating ridge until it is an ascent direction
    std::vector<double> direction;
    double ridge = 0.0;
    for (int attempt = 0; attempt < 10; ++attempt) {
      auto d = solve_spd_ridged(cov, out.eval.gradient, ridge);
      if (d) {
        double g_dot_d = 0.0;
        for (size_t i = 0; i < m; ++i) g_dot_d += out.eval.gradient[i] * d->at(i);
        if (g_dot_d > 0.0) {
          direction = std::move(*d);
          break;
        }
      }
      ridge = (ridge == 0.0) ? std::max(1e-14, 1e-12 * diag_scale) : ridge * 100.0;
    }
    if (direction.empty()) {
      // covariance numerically zero in the gradient direction: plain ascent step
      direction = out.eval.gradient;
      double dscale = std::max(1e-12, diag_scale);
      for (double& v : direction) v /= dscale;
    }

    // backtracking line search: accept on dual ascent, or on clear gradient
    // shrinkage once the value is flat at roundoff
    double g_dot_d = 0.0;
    for (size_t i = 0; i < m; ++i) g_dot_d += out.eval.gradient[i] * direction[i];
    double step = 1.0;
    bool improved = false;
    std::vector<double> trial(m);
    for (int half = 0; half < 60; ++half) {
      for (size_t i = 0; i < m; ++i) trial[i] = out.lambda[i] + step * direction[i];
      TiltEval trial_eval = eval_tilt(p, support, rows, trial);
      bool ascent = std::isfinite(trial_eval.value) &&
                    trial_eval.value > out.eval.value + 1e-4 * step * g_dot_d;
      // at the roundoff plateau the value wiggles by ulps while the gradient
      // still has orders of magnitude to fall; accept strong gradient shrink
      double value_noise = 1e-12 * std::max(1.0, std::abs(out.eval.value));
      bool gradient_shrink = std::isfinite(trial_eval.value) &&
                             trial_eval.value >= out.eval.value - value_noise &&
                             normalized_gmax(trial_eval.gradient) <= 0.5 * gmax;
      if (ascent || gradient_shrink) {
        out.lambda = trial;
        out.eval = std::move(trial_eval);
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;  // numerical precision reached
  }

  out.lambda = std::move(best_lambda);
  out.eval = std::move(best_eval);
  out.gradient_max_normalized = best_gmax;
  return out;
}

std::vector<bool> support_mask(const std::vector<int64_t>& support, int64_t k) {
  std::vector<bool> mask(static_cast<size_t>(k), false);
  for (int64_t x : support) mask[static_cast<size_t>(x)] = true;
  return mask;
}

// Decides infeasible vs infinite-divergence when no solution exists on the
// support of p, using exact vertex enumeration where tractable.
[[noreturn]] void classify_unreachable(const Dist& p, const ConstraintSet& a,
                                       const std::vector<int64_t>& support,
                                       double worst_gradient, int64_t worst_index) {
  try {
    auto on_support = feasible_vertices_on_support(a, support_mask(support, p.size()));
    if (!on_support.empty()) {
      throw Error(ErrorKind::internal,
                  "dual solver diverged although the support face is feasible (gradient " +
                      std::to_string(worst_gradient) + ")");
    }
    auto anywhere = feasible_vertices(a);
    if (!anywhere.empty()) {
      throw Error(ErrorKind::infinite_divergence,
                  "every feasible distribution puts mass outside the support of p; "
                  "D(Q||P) is infinite on the whole feasible set")
          .with_constraint_index(worst_index);
    }
    // jointly infeasible: certify by the first constraint whose removal restores feasibility
    for (size_t drop = 0; drop < a.constraints().size(); ++drop) {
      if (a.constraints().size() == 1) break;
      std::vector<LinearConstraint> rest;
      for (size_t i = 0; i < a.constraints().size(); ++i) {
        if (i != drop) rest.push_back(a.constraints()[i]);
      }
      ConstraintSet reduced(std::move(rest), a.boundary_tolerance());
      if (!feasible_vertices(reduced).empty()) {
        throw Error(ErrorKind::infeasible,
                    "constraint set is jointly infeasible; removing constraints[" +
                        std::to_string(drop) + "] restores feasibility")
            .with_constraint_index(static_cast<int64_t>(drop));
      }
    }
    throw Error(ErrorKind::infeasible, "constraint set is infeasible")
        .with_constraint_index(worst_index);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::capacity) {
      // alphabet too large for exact classification
      throw Error(ErrorKind::infeasible,
                  "no feasible distribution reachable on the support of p (exact "
                  "classification skipped at this alphabet size)")
          .with_constraint_index(worst_index);
    }
    throw;
  }
}

}  // namespace

IProjection project(const Dist& p, const ConstraintSet& a) {
  if (p.size() != a.alphabet_size()) {
    throw Error(ErrorKind::validation, "project: alphabet size mismatch (" +
                                           std::to_string(p.size()) + " vs " +
                                           std::to_string(a.alphabet_size()) + ")");
  }
  const int64_t k = p.size();
  const auto& cs = a.constraints();
  const size_t m = cs.size();

  std::vector<int64_t> support;
  for (int64_t x = 0; x < k; ++x) {
    if (p[x] > 0.0) support.push_back(x);
  }

  enum class Disposition { pending, kept, dropped_tight, dropped_slack };
  std::vector<Disposition> disposition(m, Disposition::pending);

  // Support preprocessing. Constraints whose alpha sits on the boundary of the
  // achievable range over the current support are attained only on the
  // extreme-value face, where the exponential tilt degenerates; restrict the
  // support to that face and drop the constraint. Repeats until stable since
  // each restriction changes the ranges of the others.
  for (bool changed = true; changed;) {
    changed = false;
    for (size_t i = 0; i < m; ++i) {
      if (disposition[i] == Disposition::dropped_tight ||
          disposition[i] == Disposition::dropped_slack) {
        continue;
      }
      const LinearConstraint& c = cs[i];
      double tol = 1e-12 * row_scale(c.f, c.alpha);
      double full_min = kPosInfinity, full_max = kNegInfinity;
      for (int64_t x = 0; x < k; ++x) {
        full_min = std::min(full_min, c.f[static_cast<size_t>(x)]);
        full_max = std::max(full_max, c.f[static_cast<size_t>(x)]);
      }
      double sup_min = kPosInfinity, sup_max = kNegInfinity;
      for (int64_t x : support) {
        sup_min = std::min(sup_min, c.f[static_cast<size_t>(x)]);
        sup_max = std::max(sup_max, c.f[static_cast<size_t>(x)]);
      }

      bool needs_max = false, needs_min = false;
      switch (c.relation) {
        case Relation::eq:
          if (c.alpha > full_max + tol || c.alpha < full_min - tol) {
            throw Error(ErrorKind::infeasible,
                        "constraints[" + std::to_string(i) + "]: alpha = " +
                            std::to_string(c.alpha) + " lies outside the achievable range [" +
                            std::to_string(full_min) + ", " + std::to_string(full_max) + "]")
                .with_constraint_index(static_cast<int64_t>(i));
          }
          if (c.alpha > sup_max + tol || c.alpha < sup_min - tol) {
            throw Error(ErrorKind::infinite_divergence,
                        "constraints[" + std::to_string(i) +
                            "]: alpha is only achievable with mass outside the support of p")
                .with_constraint_index(static_cast<int64_t>(i));
          }
          needs_max = c.alpha >= sup_max - tol;
          needs_min = c.alpha <= sup_min + tol;
          break;
        case Relation::ge:
          if (c.alpha > full_max + tol) {
            throw Error(ErrorKind::infeasible,
                        "constraints[" + std::to_string(i) + "]: alpha = " +
                            std::to_string(c.alpha) + " lies outside the achievable range [" +
                            std::to_string(full_min) + ", " + std::to_string(full_max) + "]")
                .with_constraint_index(static_cast<int64_t>(i));
          }
          if (c.alpha > sup_max + tol) {
            throw Error(ErrorKind::infinite_divergence,
                        "constraints[" + std::to_string(i) +
                            "]: alpha is only achievable with mass outside the support of p")
                .with_constraint_index(static_cast<int64_t>(i));
          }
          if (c.alpha <= sup_min + tol) {
            disposition[i] = Disposition::dropped_slack;  // holds everywhere on the support
            changed = true;
            continue;
          }
          needs_max = c.alpha >= sup_max - tol;
          break;
        case Relation::le:
          if (c.alpha < full_min - tol) {
            throw Error(ErrorKind::infeasible,
                        "constraints[" + std::to_string(i) + "]: alpha = " +
                            std::to_string(c.alpha) + " lies outside the achievable range [" +
                            std::to_string(full_min) + ", " + std::to_string(full_max) + "]")
                .with_constraint_index(static_cast<int64_t>(i));
          }
          if (c.alpha < sup_min - tol) {
            throw Error(ErrorKind::infinite_divergence,
                        "constraints[" + std::to_string(i) +
                            "]: alpha is only achievable with mass outside the support of p")
                .with_constraint_index(static_cast<int64_t>(i));
          }
          if (c.alpha >= sup_max - tol) {
            disposition[i] = Disposition::dropped_slack;
            changed = true;
            continue;
          }
          needs_min = c.alpha <= sup_min + tol;
          break;
      }

      if (needs_max || needs_min) {
        double extreme = needs_max ? sup_max : sup_min;
        std::vector<int64_t> face;
        for (int64_t x : support) {
          if (std::abs(c.f[static_cast<size_t>(x)] - extreme) <= tol) face.push_back(x);
        }
        support = std::move(face);
        disposition[i] = Disposition::dropped_tight;
        changed = true;
      } else {
        disposition[i] = Disposition::kept;
      }
    }
  }

  IProjection out;
  out.duals.assign(m, 0.0);
  out.active.assign(m, false);
  out.constraint_residuals.assign(m, 0.0);

  std::vector<double> q_final;

  if (support.size() == 1) {
    // single reachable symbol: the point mass is the only candidate
    q_final.assign(static_cast<size_t>(k), 0.0);
    q_final[static_cast<size_t>(support[0])] = 1.0;
    for (size_t i = 0; i < m; ++i) {
      if (disposition[i] != Disposition::kept) continue;
      const LinearConstraint& c = cs[i];
      double v = c.f[static_cast<size_t>(support[0])];
      double tol = 1e-9 * row_scale(c.f, c.alpha);
      bool ok = (c.relation == Relation::eq)   ? std::abs(v - c.alpha) <= tol
                : (c.relation == Relation::ge) ? v >= c.alpha - tol
                                               : v <= c.alpha + tol;
      if (!ok) classify_unreachable(p, a, support, std::abs(v - c.alpha), static_cast<int64_t>(i));
    }
  } else {
    // active-set loop over the surviving constraints
    std::vector<bool> in_active(m, false);
    for (size_t i = 0; i < m; ++i) {
      if (disposition[i] == Disposition::kept && cs[i].relation == Relation::eq) {
        in_active[i] = true;
      }
    }

    const int max_outer = static_cast<int>(6 * m + 12);
    DualSolve solve;
    std::vector<Row> rows;
    std::vector<size_t> row_constraint;
    for (int outer = 0;; ++outer) {
      if (outer >= max_outer) {
        throw Error(ErrorKind::internal, "active-set loop failed to settle after " +
                                             std::to_string(max_outer) + " rounds");
      }
      rows.clear();
      row_constraint.clear();
      for (size_t i = 0; i < m; ++i) {
        if (!in_active[i]) continue;
        rows.push_back(Row{&cs[i].f, cs[i].alpha, static_cast<int64_t>(i)});
        row_constraint.push_back(i);
      }
      solve = solve_dual(p, support, rows);
      out.newton_iterations += solve.iterations;
      if (solve.diverged) {
        double worst = 0.0;
        int64_t worst_index = rows.empty() ? 0 : rows[0].index;
        for (size_t r = 0; r < rows.size(); ++r) {
          if (std::abs(solve.eval.gradient[r]) >= worst) {
            worst = std::abs(solve.eval.gradient[r]);
            worst_index = rows[r].index;
          }
        }
        classify_unreachable(p, a, support, worst, worst_index);
      }
      if (solve.gradient_max_normalized > 1e-10) {
        throw Error(ErrorKind::internal,
                    "dual Newton did not converge: normalized gradient " +
                        std::to_string(solve.gradient_max_normalized) + " after " +
                        std::to_string(solve.iterations) + " iterations");
      }

      // feasibility of the inactive inequalities
      int64_t violated = -1;
      double worst_violation = 0.0;
      for (size_t i = 0; i < m; ++i) {
        if (disposition[i] != Disposition::kept || in_active[i]) continue;
        const LinearConstraint& c = cs[i];
        if (c.relation == Relation::eq) continue;
        KahanSum dot;
        for (int64_t x : support) {
          dot.add(c.f[static_cast<size_t>(x)] * solve.eval.q[static_cast<size_t>(x)]);
        }
        double v = dot.value();
        double scale = row_scale(c.f, c.alpha);
        double gap = (c.relation == Relation::ge) ? (c.alpha - v) : (v - c.alpha);
        if (gap / scale > 1e-11 && gap / scale > worst_violation) {
          worst_violation = gap / scale;
          violated = static_cast<int64_t>(i);
        }
      }
      if (violated >= 0) {
        in_active[static_cast<size_t>(violated)] = true;
        continue;
      }

      // dual sign conditions on the active inequalities
      int64_t wrong = -1;
      double worst_sign = 0.0;
      for (size_t r = 0; r < rows.size(); ++r) {
        size_t i = row_constraint[r];
        if (cs[i].relation == Relation::eq) continue;
        double l = solve.lambda[r];
        double bad = (cs[i].relation == Relation::ge) ? -l : l;
        if (bad > 1e-10 && bad > worst_sign) {
          worst_sign = bad;
          wrong = static_cast<int64_t>(i);
        }
      }
      if (wrong >= 0) {
        in_active[static_cast<size_t>(wrong)] = false;
        continue;
      }
      break;
    }

    q_final = solve.eval.q;
    out.dual_gradient_max = 0.0;
    for (size_t r = 0; r < rows.size(); ++r) {
      out.duals[row_constraint[r]] = solve.lambda[r];
      out.dual_gradient_max = std::max(out.dual_gradient_max, std::abs(solve.eval.gradient[r]));
    }
    for (size_t i = 0; i < m; ++i) out.active[i] = in_active[i];
  }

  for (size_t i = 0; i < m; ++i) {
    if (disposition[i] == Disposition::dropped_tight) out.active[i] = true;
    if (cs[i].relation == Relation::eq) out.active[i] = true;
  }

  out.q_star = Dist::renormalized(std::move(q_final));
  for (size_t i = 0; i < m; ++i) {
    KahanSum dot;
    for (int64_t u = 0; u < k; ++u) {
      dot.add(cs[i].f[static_cast<size_t>(u)] * out.q_star[u]);
    }
    out.constraint_residuals[i] = dot.value() - cs[i].alpha;
  }
  InfoValue div = relative_entropy(out.q_star, p);
  if (div.is_infinite()) {
    throw Error(ErrorKind::internal, "projection escaped the support of p");
  }
  out.divergence = div;
  return out;
}

PythagoreanResult pythagorean_residual(const Dist& p, const ConstraintSet& a, const Dist& q) {
  require_same_alphabet(p, q, "pythagorean_residual");
  if (!a.contains(q)) {
    throw Error(ErrorKind::validation,
                "pythagorean_residual: q does not lie in the constraint set");
  }
  IProjection proj = project(p, a);
  PythagoreanResult r;
  r.d_q_p = relative_entropy(q, p);
  r.d_q_qstar = relative_entropy(q, proj.q_star);
  r.d_qstar_p = proj.divergence;
  if (r.d_q_p.is_infinite() || r.d_q_qstar.is_infinite()) {
    r.kind = (r.d_q_p.is_infinite() && r.d_q_qstar.is_infinite())
                 ? PythagoreanKind::matched_infinity
                 : PythagoreanKind::unmatched_infinity;
    return r;
  }
  r.kind = PythagoreanKind::finite;
  r.residual = r.d_q_p.nats() - r.d_q_qstar.nats() - r.d_qstar_p.nats();
  return r;
}

DualEval dual_value_and_gradient(const Dist& p, const ConstraintSet& a,
                                 std::span<const double> lambdas) {
  if (p.size() != a.alphabet_size()) {
    throw Error(ErrorKind::validation, "dual_value_and_gradient: alphabet size mismatch");
  }
  if (!a.is_linear_family()) {
    throw Error(ErrorKind::validation,
                "dual_value_and_gradient expects equality constraints only; inequalities are "
                "handled by the active-set wrapper in project()");
  }
  if (lambdas.size() != a.constraints().size()) {
    throw Error(ErrorKind::validation, "dual_value_and_gradient: expected " +
                                           std::to_string(a.constraints().size()) +
                                           " multipliers, got " + std::to_string(lambdas.size()));
  }
  std::vector<int64_t> support;
  for (int64_t x = 0; x < p.size(); ++x) {
    if (p[x] > 0.0) support.push_back(x);
  }
  std::vector<Row> rows;
  for (size_t i = 0; i < a.constraints().size(); ++i) {
    rows.push_back(Row{&a.constraints()[i].f, a.constraints()[i].alpha, static_cast<int64_t>(i)});
  }
  TiltEval ev = eval_tilt(p, support, rows, std::vector<double>(lambdas.begin(), lambdas.end()));
  return DualEval{ev.value, std::move(ev.gradient)};
}

}  // namespace sanov
