#include "core/conditional.hpp"

#include <cmath>
#include <string>

#include "core/errors.hpp"
#include "core/numeric.hpp"

namespace sanov {

namespace {

void check_inputs(const Dist& p, int64_t n, const ConstraintSet& a) {
  if (p.size() != a.alphabet_size()) {
    throw Error(ErrorKind::validation, "alphabet size mismatch between p (" +
                                           std::to_string(p.size()) + ") and constraints (" +
                                           std::to_string(a.alphabet_size()) + ")");
  }
  if (n < 1) {
    throw Error(ErrorKind::validation, "sample size must be >= 1, got " + std::to_string(n));
  }
}

}  // namespace

ConditionalSummary summarize(const Dist& p, int64_t n, const ConstraintSet& a, int64_t budget) {
  check_inputs(p, n, a);
  const int64_t k = p.size();
  LogFactorials lf(n);

  // pass 1: ln P(A) by log-sum-exp over member types
  LogSumExp event_lse;
  uint64_t member_types = 0;
  uint64_t empty_members = 0;
  uint64_t total_types = 0;
  {
    TypeStream stream(k, n, budget);
    TypeVector t;
    while (stream.next(t)) {
      ++total_types;
      if (!a.contains_type(t)) continue;
      double lp = type_log_prob(t, p, lf).log_prob;
      if (lp == kNegInfinity) {
        ++empty_members;
        continue;
      }
      ++member_types;
      event_lse.add(lp);
    }
  }
  double log_prob_event = event_lse.value();
  if (log_prob_event == kNegInfinity) {
    std::string detail = empty_members > 0
                             ? "every member type has zero probability under p"
                             : "no type of the n-sample satisfies the constraint set";
    throw Error(ErrorKind::empty_event,
                "empty event at n = " + std::to_string(n) + ": " + detail);
  }
  if (log_prob_event > 0.0) log_prob_event = 0.0;  // clip log-sum-exp roundoff on sure events

  // pass 2: aggregates weighted by w_t = Pr(type | A)
  std::vector<KahanSum> omega_acc(static_cast<size_t>(k));
  KahanSum entropy_mu_acc;  // sum_t w_t (ln N_t - ln w_t), N_t = #sequences of type t
  {
    TypeStream stream(k, n, budget);
    TypeVector t;
    while (stream.next(t)) {
      if (!a.contains_type(t)) continue;
      TypeLogProb tlp = type_log_prob(t, p, lf);
      if (tlp.log_prob == kNegInfinity) continue;
      double lw = tlp.log_prob - log_prob_event;
      double w = std::exp(lw);
      if (w == 0.0) continue;
      for (int64_t u = 0; u < k; ++u) {
        int64_t c = t.counts[static_cast<size_t>(u)];
        if (c != 0) {
          omega_acc[static_cast<size_t>(u)].add(w * static_cast<double>(c) /
                                                static_cast<double>(n));
        }
      }
      entropy_mu_acc.add(w * (tlp.log_multinomial - lw));
    }
  }

  std::vector<double> omega_weights(static_cast<size_t>(k));
  for (int64_t u = 0; u < k; ++u) {
    omega_weights[static_cast<size_t>(u)] = omega_acc[static_cast<size_t>(u)].value();
  }
  // conditional-expectation weights sum to 1 up to accumulation roundoff
  Dist omega = Dist::renormalized(std::move(omega_weights));

  double h_mu = entropy_mu_acc.value();
  if (h_mu < 0.0) h_mu = 0.0;  // w_t <= 1 makes every term nonnegative; clip roundoff
  double h_omega = entropy(omega).nats();
  double tc = static_cast<double>(n) * h_omega - h_mu;
  if (tc < 0.0) {
    double scale = std::max(1.0, static_cast<double>(n) * h_omega);
    if (tc < -1e-9 * scale) {
      throw Error(ErrorKind::internal,
                  "total correlation came out significantly negative: " + std::to_string(tc));
    }
    tc = 0.0;
  }

  InfoValue kl = relative_entropy(omega, p);
  if (kl.is_infinite()) {
    // impossible: omega only charges symbols counted by positive-probability types
    throw Error(ErrorKind::internal, "conditional marginal escaped the support of p");
  }

  ConditionalSummary s{n, log_prob_event, std::move(omega), InfoValue::finite(tc),
                       InfoValue::finite(h_mu), kl, member_types, total_types};
  return s;
}

CoreIdentityResult core_identity_check(const Dist& p, int64_t n, const ConstraintSet& a,
                                       const Dist& q, int64_t budget) {
  require_same_alphabet(p, q, "core_identity_check");
  ConditionalSummary s = summarize(p, n, a, budget);
  const int64_t k = p.size();
  LogFactorials lf(n);

  // D(mu_A || Q^n) = sum_t w_t [ ln w_t - ln N_t - sum_u c_u ln q_u ]
  KahanSum d_mu_qn_acc;
  bool off_support = false;
  {
    TypeStream stream(k, n, budget);
    TypeVector t;
    while (stream.next(t) && !off_support) {
      if (!a.contains_type(t)) continue;
      TypeLogProb tlp = type_log_prob(t, p, lf);
      if (tlp.log_prob == kNegInfinity) continue;
      double lw = tlp.log_prob - s.log_prob_event;
      double w = std::exp(lw);
      if (w == 0.0) continue;
      KahanSum log_qn;
      for (int64_t u = 0; u < k; ++u) {
        int64_t c = t.counts[static_cast<size_t>(u)];
        if (c == 0) continue;
        if (q[u] == 0.0) {
          off_support = true;
          break;
        }
        log_qn.add(static_cast<double>(c) * std::log(q[u]));
      }
      if (off_support) break;
      d_mu_qn_acc.add(w * (lw - tlp.log_multinomial - log_qn.value()));
    }
  }

  InfoValue d_omega_q = relative_entropy(s.omega, q);
  if (off_support || d_omega_q.is_infinite()) {
    // Q misses mass that mu_A carries, so D(mu_A||Q^n) and n D(omega||Q) are
    // both infinite: the identity holds as a matched infinity.
    return CoreIdentityResult{true, 0.0, 0.0, 0.0};
  }

  double lhs = d_mu_qn_acc.value() - s.total_correlation.nats();
  double rhs = static_cast<double>(n) * d_omega_q.nats();
  return CoreIdentityResult{false, lhs, rhs, std::abs(lhs - rhs)};
}

}  // namespace sanov
