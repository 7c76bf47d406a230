#include "core/typespace.hpp"

#include <cmath>
#include <string>

#include "core/errors.hpp"

namespace sanov {

Dist TypeVector::as_dist() const {
  std::vector<double> probs(counts.size());
  for (size_t u = 0; u < counts.size(); ++u) {
    probs[u] = static_cast<double>(counts[u]) / static_cast<double>(n);
  }
  return Dist(std::move(probs));
}

TypeStream::TypeStream(int64_t alphabet_size, int64_t n, int64_t budget)
    : counts_(static_cast<size_t>(alphabet_size), 0), n_(n) {
  if (alphabet_size < 2) {
    throw Error(ErrorKind::validation, "alphabet size must be >= 2, got " +
                                           std::to_string(alphabet_size));
  }
  if (n < 1) {
    throw Error(ErrorKind::validation, "sample size must be >= 1, got " + std::to_string(n));
  }
  if (budget < 1) {
    throw Error(ErrorKind::validation, "type budget must be >= 1");
  }
  total_ = composition_count(alphabet_size, n);
  if (total_ > static_cast<uint64_t>(budget)) {
    throw Error(ErrorKind::capacity,
                "enumerating (k=" + std::to_string(alphabet_size) + ", n=" + std::to_string(n) +
                    ") needs " + std::to_string(total_) + " type classes; budget is " +
                    std::to_string(budget))
        .with_required_count(total_);
  }
}

bool TypeStream::next(TypeVector& out) {
  const size_t k = counts_.size();
  if (done_) return false;
  if (!started_) {
    // lexicographically smallest composition: all mass on the last symbol
    counts_.assign(k, 0);
    counts_[k - 1] = n_;
    started_ = true;
  } else {
    // find the rightmost position (excluding the last) with mass to its right,
    // pull one unit onto it, and flush the remainder to the tail
    size_t j = k - 1;
    int64_t right = counts_[k - 1];
    bool advanced = false;
    while (j > 0) {
      --j;
      if (right > 0) {
        counts_[j] += 1;
        int64_t remainder = right - 1;
        for (size_t i = j + 1; i < k; ++i) counts_[i] = 0;
        counts_[k - 1] = remainder;
        advanced = true;
        break;
      }
      right += counts_[j];
    }
    if (!advanced) {
      done_ = true;
      return false;
    }
  }
  out.counts = counts_;
  out.n = n_;
  return true;
}

TypeLogProb type_log_prob(const TypeVector& t, const Dist& p, const LogFactorials& lf) {
  if (static_cast<int64_t>(t.counts.size()) != p.size()) {
    throw Error(ErrorKind::validation, "type_log_prob: alphabet sizes differ (" +
                                           std::to_string(t.counts.size()) + " vs " +
                                           std::to_string(p.size()) + ")");
  }
  KahanSum log_multinomial;
  KahanSum log_weight;
  log_multinomial.add(lf(t.n));
  bool off_support = false;
  for (size_t u = 0; u < t.counts.size(); ++u) {
    int64_t c = t.counts[u];
    if (c == 0) continue;
    log_multinomial.add(-lf(c));
    double pu = p[static_cast<int64_t>(u)];
    if (pu == 0.0) {
      off_support = true;
    } else {
      log_weight.add(static_cast<double>(c) * std::log(pu));
    }
  }
  double lm = log_multinomial.value();
  return TypeLogProb{lm, off_support ? kNegInfinity : lm + log_weight.value()};
}

double log_type_prob(const TypeVector& t, const Dist& p) {
  LogFactorials lf(t.n);
  return type_log_prob(t, p, lf).log_prob;
}

namespace {

// Recursive descent over sequence prefixes; `prob` is the exact product of
// the prefix probabilities, so no incremental-update drift accumulates.
void enumerate_sequences(const Dist& p, int64_t n, int64_t depth, double prob,
                         TypeVector& type, const std::function<bool(const TypeVector&)>& member,
                         KahanSum& acc) {
  if (depth == n) {
    if (member(type)) acc.add(prob);
    return;
  }
  for (int64_t u = 0; u < p.size(); ++u) {
    type.counts[static_cast<size_t>(u)] += 1;
    enumerate_sequences(p, n, depth + 1, prob * p[u], type, member, acc);
    type.counts[static_cast<size_t>(u)] -= 1;
  }
}

}  // namespace

double brute_force_event_prob(int64_t k, int64_t n, const Dist& p,
                              const std::function<bool(const TypeVector&)>& member) {
  if (p.size() != k) {
    throw Error(ErrorKind::validation, "brute_force_event_prob: alphabet size mismatch");
  }
  if (n < 1) {
    throw Error(ErrorKind::validation, "sample size must be >= 1");
  }
  uint64_t seq_count = 1;
  for (int64_t i = 0; i < n; ++i) {
    if (seq_count > static_cast<uint64_t>(kBruteForceCap)) break;
    seq_count *= static_cast<uint64_t>(k);
  }
  if (seq_count > static_cast<uint64_t>(kBruteForceCap)) {
    throw Error(ErrorKind::capacity,
                "brute force over k^n >= " + std::to_string(seq_count) +
                    " sequences exceeds the cap of " + std::to_string(kBruteForceCap))
        .with_required_count(seq_count);
  }
  TypeVector type;
  type.counts.assign(static_cast<size_t>(k), 0);
  type.n = n;
  KahanSum acc;
  enumerate_sequences(p, n, 0, 1.0, type, member, acc);
  return acc.value();
}

}  // namespace sanov
