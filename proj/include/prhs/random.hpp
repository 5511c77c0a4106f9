#pragma once

// Seeded randomness with a platform-independent draw sequence. std::mt19937_64
// output is fixed by the standard; the distributions are not, so bounded draws
// are done here by rejection.

#include <cstdint>
#include <random>

#include "prhs/rational.hpp"

namespace prhs {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do x = next();
    while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
  }

  /// p/q with p ∈ [−num_bound, num_bound], q ∈ [1, den_bound].
  Scalar rational(std::int64_t num_bound, std::int64_t den_bound) {
    const auto p = uniform(-num_bound, num_bound);
    const auto q = uniform(1, den_bound);
    return make_scalar(p, q);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace prhs
