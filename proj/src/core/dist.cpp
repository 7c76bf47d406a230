#include "core/dist.hpp"

#include <cmath>
#include <string>

#include "core/errors.hpp"
#include "core/numeric.hpp"

namespace sanov {

Dist::Dist(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.size() < 2) {
    throw Error(ErrorKind::validation,
                "distribution needs at least 2 symbols, got " + std::to_string(probs_.size()));
  }
  KahanSum sum;
  for (size_t i = 0; i < probs_.size(); ++i) {
    double v = probs_[i];
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::validation, "probs[" + std::to_string(i) + "] is not finite");
    }
    if (v < 0.0) {
      throw Error(ErrorKind::validation,
                  "probs[" + std::to_string(i) + "] is negative: " + std::to_string(v));
    }
    sum.add(v);
  }
  double total = sum.value();
  if (std::abs(total - 1.0) > kProbSumTolerance) {
    throw Error(ErrorKind::validation,
                "probabilities sum to " + std::to_string(total) + ", not 1 (tolerance 1e-12)");
  }
}

Dist Dist::renormalized(std::vector<double> weights) {
  if (weights.size() < 2) {
    throw Error(ErrorKind::validation,
                "distribution needs at least 2 symbols, got " + std::to_string(weights.size()));
  }
  KahanSum sum;
  for (size_t i = 0; i < weights.size(); ++i) {
    double v = weights[i];
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorKind::validation,
                  "weights[" + std::to_string(i) + "] is not a nonnegative finite value");
    }
    sum.add(v);
  }
  double total = sum.value();
  if (total <= 0.0) {
    throw Error(ErrorKind::validation, "weights sum to zero; cannot renormalize");
  }
  for (double& v : weights) v /= total;
  return Dist(std::move(weights), Unchecked{});
}

Dist Dist::uniform(int64_t k) {
  if (k < 2) {
    throw Error(ErrorKind::validation, "distribution needs at least 2 symbols");
  }
  return Dist(std::vector<double>(static_cast<size_t>(k), 1.0 / static_cast<double>(k)),
              Unchecked{});
}

bool Dist::strictly_positive() const {
  for (double v : probs_) {
    if (v <= 0.0) return false;
  }
  return true;
}

InfoValue InfoValue::finite(double nats) {
  if (!std::isfinite(nats)) {
    throw Error(ErrorKind::internal, "InfoValue::finite called with a non-finite value");
  }
  return InfoValue(nats, false);
}

double InfoValue::nats() const {
  if (infinite_) {
    throw Error(ErrorKind::internal, "InfoValue::nats called on an infinite value");
  }
  return nats_;
}

double InfoValue::as_double() const { return infinite_ ? kPosInfinity : nats_; }

void require_same_alphabet(const Dist& a, const Dist& b, const char* where) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::validation, std::string(where) + ": alphabet sizes differ (" +
                                           std::to_string(a.size()) + " vs " +
                                           std::to_string(b.size()) + ")");
  }
}

InfoValue entropy(const Dist& p) {
  KahanSum acc;
  for (int64_t u = 0; u < p.size(); ++u) {
    double v = p[u];
    if (v > 0.0) acc.add(-v * std::log(v));
  }
  return InfoValue::finite(acc.value());
}

InfoValue relative_entropy(const Dist& q, const Dist& p) {
  require_same_alphabet(q, p, "relative_entropy");
  KahanSum acc;
  for (int64_t u = 0; u < q.size(); ++u) {
    double qu = q[u];
    if (qu == 0.0) continue;  // 0 ln(0/.) = 0
    if (p[u] == 0.0) return InfoValue::infinity();
    acc.add(qu * std::log(qu / p[u]));
  }
  return InfoValue::finite(acc.value());
}

InfoValue cross_entropy(const Dist& q, const Dist& p) {
  require_same_alphabet(q, p, "cross_entropy");
  KahanSum acc;
  for (int64_t u = 0; u < q.size(); ++u) {
    double qu = q[u];
    if (qu == 0.0) continue;
    if (p[u] == 0.0) return InfoValue::infinity();
    acc.add(-qu * std::log(p[u]));
  }
  return InfoValue::finite(acc.value());
}

}  // namespace sanov
