#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ocrs/core.hpp"
#include "ocrs/scheme_spec.hpp"

namespace ocrs {

/// Fixed catalog of hard-ish activation vectors.
enum class StressKind {
  Uniform,      ///< x_i = target / n
  Geometric,    ///< front-loaded, decaying by e^{-4/n} per step, capped at 1
  SingleHeavy,  ///< x_0 = min(1, target), the rest uniform
  HalfZeros,    ///< even indices 0, odd indices uniform
  Lumpy,        ///< alternating heavy and light blocks
};

std::string stress_name(StressKind kind);
const std::vector<StressKind>& stress_catalog();

/// Length-n vector with entries in [0,1] summing to `target` (up to rounding,
/// never above it). Throws BadParameters if the shape cannot hold the target.
Eigen::VectorXd stress_vector(StressKind kind, std::size_t n, double target);

/// Stress instance with sum(x) = scale * k, n = 4k unless given.
Instance stress_instance(StressKind kind, int k, double scale, std::size_t n = 0);

/// Bumped whenever the generator below changes what it produces.
inline constexpr int kFuzzVersion = 1;

struct FuzzOptions {
  std::size_t n_min = 1;
  std::size_t n_max = 10;
  int k_max = 6;
  /// Restrict to these scheme kinds; empty means all.
  std::vector<SchemeKind> kinds;
  /// Probability of an extra scale_reduction wrapper on the scheme.
  double wrap_probability = 0.15;
};

/// One reproducible (instance, order, scheme, seed) case. AlgorithmD cases
/// always satisfy sum(x) <= k - d.
struct FuzzCase {
  Instance instance;
  std::vector<std::size_t> order;
  SchemeSpec scheme;
  std::uint64_t seed = 0;
};

/// Case number `index` of the corpus keyed by `corpus_seed` and kFuzzVersion.
FuzzCase fuzz_case(std::uint64_t corpus_seed, std::uint64_t index, const FuzzOptions& options = {});

}  // namespace ocrs
