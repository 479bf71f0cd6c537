#pragma once

#include <cstdint>

#include "pmlp/projection.hpp"
#include "pmlp/rng.hpp"

namespace pmlp {

// Multiplies `u` by (1 + delta) where delta is supported on `support` seeded
// random entries, has random signs, exact relative l2 norm `c`, and entrywise
// magnitude at most 1/4.
Vector drift_step(const Vector& u, std::size_t support, double c,
                  SplitMix64& rng);

struct BenchParams {
  std::size_t n = 64;
  std::size_t d = 32;
  std::size_t updates = 2000;
  double c = 0.01;  // per-step relative l2 drift of u and v
  double eps_mp = 0.1;
  double a = 2.0 / 3.0;
  ResetStrategy strategy = ResetStrategy::kPowerOfTwo;
  std::uint64_t seed = 1;
};

struct BenchResult {
  MaintainerCounters counters;
  std::size_t batch_threshold = 0;
  double max_audit_deviation = 0.0;
};

// Feeds the maintainer a synthetic drift sequence that alternates spread and
// concentrated phases so several rebuild ranks occur, and reports counters.
BenchResult run_drift_bench(const BenchParams& params);

}  // namespace pmlp
