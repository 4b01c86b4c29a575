#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "ocrs/adversary.hpp"
#include "ocrs/core.hpp"
#include "ocrs/schemes.hpp"

namespace ocrs {

/// Non-negative value law of one element, sampled by inversion from a single uniform.
class ValueDistribution {
 public:
  enum class Kind { Discrete, Uniform, Exponential, PiecewiseQuantile };

  /// Finite support; probabilities must sum to 1 within 1e-12.
  static ValueDistribution discrete(std::vector<double> values, std::vector<double> probs);
  static ValueDistribution point(double value) { return discrete({value}, {1.0}); }
  static ValueDistribution uniform(double lo, double hi);
  static ValueDistribution exponential(double rate);
  /// Inverse cdf interpolated linearly through (u_j, q_j) with u from 0 to 1 strictly
  /// increasing and q non-decreasing. Flat pieces are atoms.
  static ValueDistribution piecewise_quantile(std::vector<double> u, std::vector<double> q);

  Kind kind() const { return kind_; }

  /// P[X > t].
  double survival(double t) const;
  /// P[X = t].
  double atom(double t) const;
  /// Inverse cdf at u in [0,1).
  double quantile(double u) const;
  /// Locations carrying positive mass.
  std::vector<double> atoms() const;
  /// Upper end of the support (infinity for the exponential).
  double support_max() const;

 private:
  ValueDistribution() = default;

  Kind kind_ = Kind::Discrete;
  std::vector<double> a_;  ///< values, or quantile knots u
  std::vector<double> b_;  ///< probabilities, or quantile values q
  double lo_ = 0.0;
  double hi_ = 0.0;
};

struct Threshold {
  double T = 0.0;
  /// Acceptance probability for realizations equal to T.
  double rho = 0.0;
};

/// T with sum P[X_i > T] + rho * sum P[X_i = T] = k. When sum P[X_i > 0] <= k
/// the result is T = 0, rho = 0.
Threshold find_threshold(const std::vector<ValueDistribution>& dists, int k);

class ProphetInstance {
 public:
  ProphetInstance(std::vector<ValueDistribution> dists, int k);

  const std::vector<ValueDistribution>& distributions() const { return dists_; }
  std::size_t size() const { return dists_.size(); }
  int k() const { return k_; }
  const Threshold& threshold() const { return threshold_; }
  /// x_i = P[X_i > T] + rho P[X_i = T], as a validated instance.
  const Instance& activation() const { return activation_; }

 private:
  std::vector<ValueDistribution> dists_;
  int k_;
  Threshold threshold_;
  Instance activation_;
};

/// Sum of the k largest values.
double prophet_value(std::span<const double> values, int k);

struct GamblerTrial {
  std::vector<double> values;
  double collected = 0.0;
  double prophet = 0.0;
  int selected = 0;
};

/// Draws every value (one uniform each, in index order), then a rho-coin for
/// each value equal to T, then runs the scheme on the activations.
GamblerTrial run_gambler(const ProphetInstance& pinst, const SchemeSpec& scheme, const Order& order,
                         RandomSource& rng, const PolicyOptions& options = {});

struct CompetitiveRatio {
  double ratio = 0.0;
  /// Delta-method standard error of the ratio of means.
  double std_err = 0.0;
  double ci_low = 0.0;   ///< ratio - 3 std_err
  double ci_high = 0.0;  ///< ratio + 3 std_err
  double mean_gambler = 0.0;
  double mean_prophet = 0.0;
  std::size_t trials = 0;
  /// Trials where the gambler beat the prophet (must stay 0).
  std::size_t dominance_violations = 0;
  /// Trials selecting more than k elements (must stay 0).
  std::size_t over_budget = 0;
};

/// Paired estimate over trials >= 1000; trial t uses RandomSource(seed, t).
CompetitiveRatio competitive_ratio(const ProphetInstance& pinst, const SchemeSpec& scheme,
                                   const Order& order, std::size_t trials, std::uint64_t seed,
                                   const PolicyOptions& options = {});

}  // namespace ocrs
