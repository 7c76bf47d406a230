#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "core/dist.hpp"
#include "core/numeric.hpp"

namespace sanov {

inline constexpr int64_t kDefaultTypeBudget = 20'000'000;
inline constexpr int64_t kBruteForceCap = 10'000'000;

// Empirical count vector of an n-sample: counts sum to n.
struct TypeVector {
  std::vector<int64_t> counts;
  int64_t n = 0;

  // Empirical measure counts[u]/n as a validated distribution.
  Dist as_dist() const;
};

// Streams every composition of n into k nonnegative parts, in lexicographic
// order, without materializing the list. The total count C(n+k-1, k-1) is
// checked against the budget up front; exceeding it is a capacity error that
// names the required count.
class TypeStream {
 public:
  TypeStream(int64_t alphabet_size, int64_t n, int64_t budget = kDefaultTypeBudget);

  // Advances to the next type; returns false when exhausted.
  bool next(TypeVector& out);

  uint64_t total_count() const { return total_; }

 private:
  std::vector<int64_t> counts_;
  int64_t n_;
  uint64_t total_;
  bool started_ = false;
  bool done_ = false;
};

struct TypeLogProb {
  double log_multinomial;  // ln #{sequences of this type}
  double log_prob;         // ln P^n(type class); -inf if p vanishes on a counted symbol
};

// Both logs in one pass; `lf` must cover [0, t.n].
TypeLogProb type_log_prob(const TypeVector& t, const Dist& p, const LogFactorials& lf);

// ln[ multinomial(n; counts) * prod_u p(u)^counts[u] ].
double log_type_prob(const TypeVector& t, const Dist& p);

// Exhaustive sequence-level oracle: sums P^n(sequence) over all k^n sequences
// whose type satisfies `member`. Capacity error if k^n exceeds the cap.
double brute_force_event_prob(int64_t k, int64_t n, const Dist& p,
                              const std::function<bool(const TypeVector&)>& member);

}  // namespace sanov
