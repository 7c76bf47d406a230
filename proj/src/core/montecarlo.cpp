#include "core/montecarlo.hpp"

#include <cmath>
#include <string>

#include "core/errors.hpp"
#include "core/numeric.hpp"

namespace sanov {

namespace {

// 0.975 quantile of the standard normal: the 95% two-sided critical value
constexpr double kZ95 = 1.959963984540054;

}  // namespace

void wilson_interval(int64_t hits, int64_t trials, double* low, double* high) {
  double nn = static_cast<double>(trials);
  double phat = static_cast<double>(hits) / nn;
  double z2 = kZ95 * kZ95;
  double denom = 1.0 + z2 / nn;
  double center = (phat + z2 / (2.0 * nn)) / denom;
  double half = (kZ95 / denom) * std::sqrt(phat * (1.0 - phat) / nn + z2 / (4.0 * nn * nn));
  *low = std::max(0.0, center - half);
  *high = std::min(1.0, center + half);
}

McEstimate estimate(const Dist& p, int64_t n, const ConstraintSet& a, int64_t trials,
                    uint64_t seed) {
  if (p.size() != a.alphabet_size()) {
    throw Error(ErrorKind::validation, "estimate: alphabet size mismatch");
  }
  if (n < 1) {
    throw Error(ErrorKind::validation, "sample size must be >= 1");
  }
  if (trials < 1) {
    throw Error(ErrorKind::validation, "trials must be >= 1, got " + std::to_string(trials));
  }

  const int64_t k = p.size();
  TypeVector type;
  type.counts.assign(static_cast<size_t>(k), 0);
  type.n = n;

  int64_t hits = 0;
  for (int64_t trial = 0; trial < trials; ++trial) {
    type.counts.assign(static_cast<size_t>(k), 0);
    for (int64_t j = 0; j < n; ++j) {
      uint64_t counter = static_cast<uint64_t>(trial) * static_cast<uint64_t>(n) +
                         static_cast<uint64_t>(j);
      double u = uniform01(splitmix64_at(seed, counter));
      double cum = 0.0;
      int64_t symbol = -1;
      for (int64_t x = 0; x < k; ++x) {
        cum += p[x];
        if (u < cum) {
          symbol = x;
          break;
        }
      }
      if (symbol < 0) {
        // roundoff pushed u past the accumulated total: take the last charged symbol
        for (int64_t x = k - 1; x >= 0; --x) {
          if (p[x] > 0.0) {
            symbol = x;
            break;
          }
        }
      }
      type.counts[static_cast<size_t>(symbol)] += 1;
    }
    if (a.contains_type(type)) ++hits;
  }

  McEstimate e;
  e.trials = trials;
  e.hits = hits;
  e.seed = seed;
  e.partitions = 1;
  e.p_hat = static_cast<double>(hits) / static_cast<double>(trials);
  wilson_interval(hits, trials, &e.ci_low, &e.ci_high);
  return e;
}

}  // namespace sanov
