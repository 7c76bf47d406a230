#pragma once

#include <cstdint>

#include "core/constraints.hpp"
#include "core/dist.hpp"

namespace sanov {

// Name of the pseudorandom stream, recorded in reports: the SplitMix64
// finalizer evaluated at counter positions derived from the seed. Draw j of
// trial t reads counter t*n + j, so results are reproducible and any counter
// range is addressable without sequencing.
inline constexpr const char* kMcGeneratorName = "splitmix64-counter";

struct McEstimate {
  int64_t trials = 0;
  int64_t hits = 0;
  double p_hat = 0.0;
  double ci_low = 0.0;   // Wilson 95% interval
  double ci_high = 1.0;
  uint64_t seed = 0;
  int partitions = 1;  // counter-stream partitions used (single stream here)
};

// Draws `trials` i.i.d. n-samples from p and counts those whose type lands in
// the constraint set. Deterministic for fixed (inputs, seed, trials).
McEstimate estimate(const Dist& p, int64_t n, const ConstraintSet& a, int64_t trials,
                    uint64_t seed);

// Wilson 95% score interval for `hits` successes in `trials` draws.
void wilson_interval(int64_t hits, int64_t trials, double* low, double* high);

}  // namespace sanov
