#pragma once

#include <cstdint>

namespace pmlp {

// splitmix64: a counter-based 64-bit generator. The state advances by a
// fixed increment and each output is a finalizer hash of the counter, so
// identical seeds reproduce identical streams on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1), 53 mantissa bits
  double next_unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  double next_in(double lo, double hi) {
    return lo + (hi - lo) * next_unit();
  }

 private:
  std::uint64_t state_;
};

}  // namespace pmlp
