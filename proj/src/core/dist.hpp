#pragma once

#include <cstdint>
#include <vector>

namespace sanov {

inline constexpr double kProbSumTolerance = 1e-12;

// Probability vector over a finite alphabet. Validated on construction:
// at least two symbols, every entry nonnegative and finite, entries summing
// to 1 within 1e-12 absolute. Immutable afterwards.
class Dist {
 public:
  explicit Dist(std::vector<double> probs);

  // Explicit renormalization of nonnegative weights. Never applied silently.
  static Dist renormalized(std::vector<double> weights);

  static Dist uniform(int64_t k);

  int64_t size() const { return static_cast<int64_t>(probs_.size()); }
  double operator[](int64_t u) const { return probs_[static_cast<size_t>(u)]; }
  const std::vector<double>& probs() const { return probs_; }
  bool strictly_positive() const;

 private:
  struct Unchecked {};
  Dist(std::vector<double> probs, Unchecked) : probs_(std::move(probs)) {}

  std::vector<double> probs_;
};

// Extended real in nats: finite, or explicitly +infinite. Never NaN.
class InfoValue {
 public:
  InfoValue() : nats_(0.0), infinite_(false) {}

  static InfoValue finite(double nats);
  static InfoValue infinity() { return InfoValue(0.0, true); }

  bool is_infinite() const { return infinite_; }
  // Finite value in nats; requires !is_infinite().
  double nats() const;
  // Finite value, or +inf as a double when flagged infinite.
  double as_double() const;

 private:
  InfoValue(double nats, bool infinite) : nats_(nats), infinite_(infinite) {}
  double nats_;
  bool infinite_;
};

// H(p) = sum_x p(x) ln(1/p(x)), with 0 ln(1/0) = 0. Result in [0, ln k].
InfoValue entropy(const Dist& p);

// D(q||p) = sum_x q(x) ln(q(x)/p(x)); +infinity iff q charges a p-null symbol.
InfoValue relative_entropy(const Dist& q, const Dist& p);

// H(q,p) = sum_x q(x) ln(1/p(x)) = H(q) + D(q||p).
InfoValue cross_entropy(const Dist& q, const Dist& p);

// Shared guard for operations over a common alphabet.
void require_same_alphabet(const Dist& a, const Dist& b, const char* where);

}  // namespace sanov
