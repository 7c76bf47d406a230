#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace sanov {

inline constexpr double kNegInfinity = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInfinity = std::numeric_limits<double>::infinity();

// Neumaier-compensated accumulator.
class KahanSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Streaming ln(sum_i exp(x_i)). Tolerates -inf terms; empty stream yields -inf.
class LogSumExp {
 public:
  void add(double x) {
    if (x == kNegInfinity) return;
    if (x <= max_) {
      scaled_.add(std::exp(x - max_));
      return;
    }
    if (max_ != kNegInfinity) {
      double rescaled = scaled_.value() * std::exp(max_ - x);
      scaled_ = KahanSum{};
      scaled_.add(rescaled);
    }
    max_ = x;
    scaled_.add(1.0);
  }
  double value() const {
    if (max_ == kNegInfinity) return kNegInfinity;
    return max_ + std::log(scaled_.value());
  }

 private:
  double max_ = kNegInfinity;
  KahanSum scaled_;
};

// ln(c!) lookup for c in [0, n].
class LogFactorials {
 public:
  explicit LogFactorials(int64_t n) : table_(static_cast<size_t>(n) + 1) {
    for (int64_t c = 0; c <= n; ++c) {
      table_[static_cast<size_t>(c)] = std::lgamma(static_cast<double>(c) + 1.0);
    }
  }
  double operator()(int64_t c) const { return table_[static_cast<size_t>(c)]; }

 private:
  std::vector<double> table_;
};

// SplitMix64 finalizer (Steele et al.; java.util.SplittableRandom).
inline uint64_t splitmix64_mix(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Output of the SplitMix64 stream seeded with `seed` at position `counter`.
// Counter-based: any position is addressable directly, so disjoint counter
// ranges give independent reproducible streams.
inline uint64_t splitmix64_at(uint64_t seed, uint64_t counter) {
  return splitmix64_mix(seed + (counter + 1) * 0x9e3779b97f4a7c15ULL);
}

// Uniform double in [0, 1) from 64 random bits (top 53 bits).
inline double uniform01(uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// C(n + k - 1, k - 1): number of compositions of n into k nonnegative parts.
// Saturates at uint64 max instead of overflowing.
inline uint64_t composition_count(int64_t k, int64_t n) {
  constexpr uint64_t kMax = std::numeric_limits<uint64_t>::max();
  uint64_t result = 1;
  for (int64_t i = 1; i <= k - 1; ++i) {
    uint64_t factor = static_cast<uint64_t>(n) + static_cast<uint64_t>(i);
    if (result > kMax / factor) return kMax;
    result = result * factor / static_cast<uint64_t>(i);  // division is exact
  }
  return result;
}

}  // namespace sanov
