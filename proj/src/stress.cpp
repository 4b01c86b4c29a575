#include "ocrs/stress.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ocrs/adversary.hpp"

namespace ocrs {

namespace {

// Largest c with sum(min(1, c * shape)) <= target, then trimmed so the sum never overshoots.
Eigen::VectorXd fit_to_target(const Eigen::VectorXd& shape, double target) {
  const Eigen::Index n = shape.size();
  if (target <= 0.0) return Eigen::VectorXd::Zero(n);
  double smallest = std::numeric_limits<double>::infinity();
  Eigen::Index positive = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (shape[i] > 0.0) {
      ++positive;
      smallest = std::min(smallest, shape[i]);
    }
  }
  if (static_cast<double>(positive) < target)
    throw BadParameters("shape has too few positive entries for the target sum");
  auto mass = [&](double c) { return compensated_sum(shape.unaryExpr([c](double s) { return std::min(1.0, c * s); })); };
  double lo = 0.0;
  double hi = 1.0 / smallest;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (mass(mid) <= target ? lo : hi) = mid;
  }
  Eigen::VectorXd x = shape.unaryExpr([c = hi](double s) { return std::min(1.0, c * s); });
  for (int it = 0; it < 8; ++it) {
    const double total = compensated_sum(x);
    if (total <= target) break;
    x *= std::nextafter(target / total, 0.0);
  }
  return x;
}

}  // namespace

std::string stress_name(StressKind kind) {
  switch (kind) {
    case StressKind::Uniform: return "uniform";
    case StressKind::Geometric: return "geometric";
    case StressKind::SingleHeavy: return "single-heavy";
    case StressKind::HalfZeros: return "half-zeros";
    case StressKind::Lumpy: return "lumpy";
  }
  return "?";
}

const std::vector<StressKind>& stress_catalog() {
  static const std::vector<StressKind> all{StressKind::Uniform, StressKind::Geometric,
                                           StressKind::SingleHeavy, StressKind::HalfZeros,
                                           StressKind::Lumpy};
  return all;
}

Eigen::VectorXd stress_vector(StressKind kind, std::size_t n, double target) {
  if (n == 0) throw BadParameters("stress vector needs n >= 1");
  if (!(target >= 0.0)) throw BadParameters("stress target must be non-negative");
  const auto len = static_cast<Eigen::Index>(n);
  Eigen::VectorXd shape = Eigen::VectorXd::Ones(len);
  switch (kind) {
    case StressKind::Uniform:
      break;
    case StressKind::Geometric:
      for (Eigen::Index i = 0; i < len; ++i) shape[i] = std::exp(-4.0 * static_cast<double>(i) / static_cast<double>(n));
      break;
    case StressKind::SingleHeavy: {
      Eigen::VectorXd x = Eigen::VectorXd::Zero(len);
      x[0] = std::min(1.0, target);
      if (len > 1) {
        x.tail(len - 1) = fit_to_target(Eigen::VectorXd::Ones(len - 1), target - x[0]);
      } else if (target > 1.0) {
        throw BadParameters("single element cannot hold the target sum");
      }
      return x;
    }
    case StressKind::HalfZeros:
      for (Eigen::Index i = 0; i < len; i += 2) shape[i] = 0.0;
      break;
    case StressKind::Lumpy: {
      const Eigen::Index block = std::max<Eigen::Index>(1, len / 16);
      for (Eigen::Index i = 0; i < len; ++i) shape[i] = (i / block) % 2 == 0 ? 3.0 : 1.0;
      break;
    }
  }
  return fit_to_target(shape, target);
}

Instance stress_instance(StressKind kind, int k, double scale, std::size_t n) {
  if (k < 1) throw BadK(k, "need k >= 1");
  if (!(scale > 0.0 && scale <= 1.0)) throw BadParameters("stress scale must lie in (0,1]");
  if (n == 0) n = 4 * static_cast<std::size_t>(k);
  return validate_instance(stress_vector(kind, n, scale * k), k, scale);
}

FuzzCase fuzz_case(std::uint64_t corpus_seed, std::uint64_t index, const FuzzOptions& options) {
  if (options.n_min < 1 || options.n_max < options.n_min || options.k_max < 1)
    throw BadParameters("bad fuzz options");
  RandomSource rng(corpus_seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(kFuzzVersion)), index);

  const std::size_t n = options.n_min + rng.below(options.n_max - options.n_min + 1);
  const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(options.k_max)));

  static const std::vector<SchemeKind> every{SchemeKind::SimpleOcrs, SchemeKind::AlgorithmD,
                                             SchemeKind::NaiveGreedy, SchemeKind::PartitionGreedy,
                                             SchemeKind::ScaledGreedy};
  const auto& kinds = options.kinds.empty() ? every : options.kinds;
  SchemeSpec scheme;
  scheme.kind = kinds[rng.below(kinds.size())];

  double target = (0.2 + 0.8 * rng.uniform()) * k;
  if (scheme.kind == SchemeKind::AlgorithmD) {
    if (k >= 2 && rng.bernoulli(0.5))
      scheme.d = static_cast<double>(1 + rng.below(static_cast<std::uint64_t>(k - 1)));
    else
      scheme.d = (0.05 + 0.9 * rng.uniform()) * k;
    target = std::min(target, k - scheme.d);
  } else if (scheme.kind == SchemeKind::ScaledGreedy) {
    scheme.b = rng.bernoulli(0.1) ? 1.0 : 1.0 - rng.uniform();
  }
  if (rng.bernoulli(options.wrap_probability)) scheme.wrap = 1.0 - rng.uniform();

  Eigen::VectorXd raw(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < raw.size(); ++i) {
    const double u = rng.uniform();
    raw[i] = u < 0.1 ? 0.0 : u < 0.2 ? 1.0 : rng.uniform();
  }
  const double positive = static_cast<double>((raw.array() > 0.0).count());
  target = std::min(target, positive);
  Eigen::VectorXd x = fit_to_target(raw, target);

  std::optional<std::vector<Part>> partition;
  if (scheme.kind == SchemeKind::PartitionGreedy || rng.bernoulli(0.3)) {
    const std::size_t parts = 1 + rng.below(std::min<std::size_t>(n, 3));
    std::vector<Part> blocks(parts);
    const auto shuffled = random_permutation(n, rng);
    for (std::size_t j = 0; j < n; ++j) blocks[j < parts ? j : rng.below(parts)].members.push_back(shuffled[j]);
    for (auto& b : blocks) std::sort(b.members.begin(), b.members.end());
    for (int q = 0; q < k; ++q) ++blocks[rng.below(parts)].quota;
    partition = std::move(blocks);
  }

  FuzzCase out{validate_instance(std::move(x), k, 1.0, std::move(partition)), {}, scheme, 0};
  out.order = random_permutation(n, rng);
  out.seed = rng.next_u64();
  return out;
}

}  // namespace ocrs
