#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ocrs/errors.hpp"
#include "ocrs/random.hpp"

namespace ocrs {

/// One block of a partition matroid: at most `quota` selections among `members`.
struct Part {
  int quota = 0;
  std::vector<std::size_t> members;
};

/// Activation probabilities with a budget k. Immutable once validated.
class Instance {
 public:
  std::size_t size() const { return static_cast<std::size_t>(x_.size()); }
  const Eigen::VectorXd& x() const { return x_; }
  double x(std::size_t i) const { return x_[static_cast<Eigen::Index>(i)]; }
  int k() const { return k_; }
  /// Scale b of the declared polytope b*P_k.
  double scale() const { return scale_; }
  /// Compensated sum of x.
  double total() const { return total_; }

  bool has_partition() const { return partition_.has_value(); }
  const std::vector<Part>& partition() const;
  /// Part index of every element; empty without a partition.
  const std::vector<int>& part_of() const { return part_of_; }

  /// Stable 64-bit FNV-1a digest of (x, k, b, partition), rendered as hex.
  std::string digest() const;

 private:
  friend Instance validate_instance(Eigen::VectorXd, int, double, std::optional<std::vector<Part>>);
  Instance() = default;

  Eigen::VectorXd x_;
  int k_ = 0;
  double scale_ = 1.0;
  double total_ = 0.0;
  std::optional<std::vector<Part>> partition_;
  std::vector<int> part_of_;
};

/// Absolute slack allowed on the budget check sum(x) <= b*k.
inline constexpr double kBudgetSlack = 1e-12;

/// Checks 0 <= x_i <= 1, sum(x) <= b*k (+1e-12) and partition consistency.
Instance validate_instance(Eigen::VectorXd x, int k, double b = 1.0,
                           std::optional<std::vector<Part>> partition = std::nullopt);

/// Realized active set R(x).
struct ActivationPattern {
  std::vector<bool> bits;

  std::size_t size() const { return bits.size(); }
  bool operator[](std::size_t i) const { return bits[i]; }
  bool operator==(const ActivationPattern&) const = default;
};

/// Draws one uniform per element, in index order.
ActivationPattern sample_activation(const Instance& inst, RandomSource& rng);

/// Neumaier-compensated running sum of `values`.
Eigen::VectorXd compensated_prefix_sums(const Eigen::Ref<const Eigen::VectorXd>& values);

/// Compensated total.
double compensated_sum(const Eigen::Ref<const Eigen::VectorXd>& values);

/// x permuted into revelation order: result[t] = x[order[t]].
Eigen::VectorXd x_in_order(const Instance& inst, std::span<const std::size_t> order);

/// Prefix sums of x along a revelation order, shared by every policy and the walk module.
Eigen::VectorXd order_prefix_sums(const Instance& inst, std::span<const std::size_t> order);

/// Throws unless `order` is a permutation of [0, n).
void check_permutation(std::span<const std::size_t> order, std::size_t n);

}  // namespace ocrs
