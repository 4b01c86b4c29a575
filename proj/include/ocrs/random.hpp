#pragma once

#include <cstdint>
#include <random>

namespace ocrs {

/// Reproducible random stream keyed by (master seed, stream id).
///
/// Every Monte Carlo trial owns one source keyed by its trial index, so
/// results do not depend on the order in which trials are executed.
class RandomSource {
 public:
  RandomSource(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0,1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// One draw; true with probability p. p <= 0 is never true, p >= 1 always.
  bool bernoulli(double p) { return uniform() < p; }

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
};

}  // namespace ocrs
