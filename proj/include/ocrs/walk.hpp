#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "ocrs/adversary.hpp"
#include "ocrs/core.hpp"
#include "ocrs/trace.hpp"

namespace ocrs {

/// Values within this distance of an integer are snapped to it before a ceiling.
inline constexpr double kIntegerSnap = 1e-9;

double snapped_ceil(double v);

/// The two processes behind AlgorithmD, 0-based: W[t] and S[t] are the values
/// after the first t+1 revealed elements.
///   W[t] = #active so far   - sum of x so far
///   S[t] = #selected so far - sum of x so far
struct WalkPair {
  Eigen::VectorXd W;
  Eigen::VectorXd S;
  double d = 0.0;
};

/// Throws SchemeMismatch unless the trace comes from unwrapped AlgorithmD(d).
WalkPair build_walks(const Trace& trace, const Eigen::Ref<const Eigen::VectorXd>& x_ordered,
                     double d);

/// Positions t where ceil(W[t] - d) > 0 and exceeds every earlier such ceiling.
/// For integer d this is ceil(W[t]) > d reaching a new maximum.
std::vector<std::size_t> new_integral_heights(const Eigen::Ref<const Eigen::VectorXd>& W, double d);

/// Q_i = W_{m-i-1} - W_{m-1} for i = 0..m-1, with W_0 = 0 and W_j = W[j-1].
/// Needs 1 <= m <= W.size().
Eigen::VectorXd reversed_process(const Eigen::Ref<const Eigen::VectorXd>& W, std::size_t m);

/// (a + K) / (-b): bound on P(max_{i>=1} Q_i < a, Q_n <= b) for a martingale
/// with Q_0 = 0 and steps bounded by K, a > 0 > b.
double martingale_tail_bound(double a, double b, double K);

struct TailEstimate {
  double p_hat = 0.0;
  double std_err = 0.0;
  double bound = 0.0;
  std::size_t trials = 0;
};

/// Monte Carlo frequency of {max_{1<=i<=n-1} Q_i < a, Q_{n-1} <= -(d-1)} for the
/// reversed walk at m = n, against the bound with K = 1 and b = -(d-1).
/// Needs a > 0, d > 1, trials >= 1000.
TailEstimate martingale_tail_estimate(const Instance& inst, const Order& order, double d, double a,
                                      std::size_t trials, std::uint64_t seed);

/// Trajectory-level instrumentation of AlgorithmD(d) over many trials.
struct WalkStudy {
  double d = 0.0;
  std::size_t trials = 0;
  std::vector<std::size_t> order;
  Eigen::VectorXd x_ordered;
  std::vector<std::uint64_t> active_discarded;  ///< per position
  Eigen::VectorXd increment_sum;                ///< per position, sum of X_t
  std::size_t increment_count_checked = 0;
  /// Trajectories breaking W - S = #active-discarded at some step.
  std::size_t difference_mismatches = 0;
  /// Trajectories where discarded-active positions differ from new integral heights.
  std::size_t height_mismatches = 0;
  /// Trajectories with S[t] > d somewhere.
  std::size_t buffer_violations = 0;
  /// Trajectories selecting more than k elements.
  std::size_t over_budget = 0;

  double discard_probability(std::size_t t) const;
  double discard_std_err(std::size_t t) const;
  /// 2 x_t / (d - 1).
  double discard_bound(std::size_t t) const;
  double increment_mean(std::size_t t) const;
  /// sqrt(x(1-x)/trials), the exact standard error of the increment mean.
  double increment_std_err(std::size_t t) const;
};

WalkStudy walk_study(const Instance& inst, const Order& order, double d, std::size_t trials,
                     std::uint64_t seed);

}  // namespace ocrs
