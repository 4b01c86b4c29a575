#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "ocrs/binomial.hpp"
#include "ocrs/core.hpp"
#include "ocrs/scheme_spec.hpp"

namespace ocrs {

/// Weights b_i = C(2k-1, i-1) / 2^(2k-1), i = 1..2k, stored 0-based.
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> half_binomial_weights(int k) {
  if (k < 1) throw BadK(k, "need k >= 1");
  return binom_pmf_vector<Scalar>({2 * static_cast<std::int64_t>(k) - 1, 0.5});
}

/// Optimum of the impossibility LP
///   max sum_i f(i) b_i  s.t.  sum_i f(i) <= k,  f non-increasing,  f >= 0
/// in two-level form: f = x on [1, k+a], f(k+a+1) = y, 0 afterwards.
struct LpSolution {
  int k = 0;
  int a = 0;
  double x = 0.0;
  double y = 0.0;
  double c_star = 0.0;
  Eigen::VectorXd coefficients;  ///< b_1..b_2k

  /// The LP has no cap f <= 1; small k can place x above 1.
  bool x_exceeds_one() const { return x > 1.0; }
};

/// Scans a in [0,k] and, for each, the three vertices of {x >= y >= 0, x(k+a)+y <= k}.
LpSolution lp_cstar(int k);

struct LpOracleResult {
  double c_star = 0.0;       ///< best structured candidate
  int best_prefix = 0;       ///< j of the best candidate (f = k/j on [1,j])
  double best_probe = 0.0;   ///< best random feasible vector
  std::size_t probes = 0;
};

/// Independent LP check for k <= 200: weights from an exact product recurrence
/// in long double, all prefix-level candidates j in [1,2k] with both vertex
/// kinds, and random feasible non-increasing probes as lower-bound witnesses.
LpOracleResult lp_oracle(int k, std::size_t probes = 10000, std::uint64_t seed = 0x6c706f72);

/// k/(k+a) * P(Bin(2k-1, 1/2) <= k+a).
double cstar_upper_envelope(int k, int a);

/// 1 - 0.01 * sqrt(ln k / k), natural log.
double impossibility_curve(double k);

struct ImpossibilitySweep {
  std::vector<int> ks;
  std::vector<double> c_star;
  std::vector<double> curve;
  /// Smallest sampled k from which every later sample satisfies c* <= curve.
  std::optional<int> k0;
};

ImpossibilitySweep impossibility_sweep(std::span<const int> ks);

/// About `points` distinct integers spaced geometrically in [kmin, kmax].
std::vector<int> geometric_k_grid(int kmin, int kmax, int points);

struct HksGuarantee {
  double b = 0.0;
  double c = 0.0;
  double bc = 0.0;
};

/// b = 1 - sqrt(2 ln k / k), c = 1 - 1/k. Needs k >= 3.
HksGuarantee hks_guarantee(int k);

/// exp(-(1-b)^2 k / 2).
double chernoff_tail(double b, int k);

/// (1/15) exp(-16 n (1/2 - k'/n)^2) for even n and n/2 <= k' <= 5n/8.
double anti_concentration_lower(std::int64_t n, double kprime);

/// b * P(Bin(2k-1, b/2) <= k-1): selectability of the last element of the
/// 2k-element hard instance under scaled naive greedy.
double greedy_hard_instance_value(double b, int k);

struct GreedyFrontier {
  double b = 0.0;
  double value = 0.0;
};

/// Maximizes greedy_hard_instance_value over b in (0,1]: grid search, then
/// golden-section refinement around the best grid point.
GreedyFrontier greedy_bc_frontier(int k, std::size_t grid = 10000);

/// (1 - 1/sqrt(k)) (1 - 2/(sqrt(k)-1)); empty when it is not positive.
std::optional<double> ocrs_guarantee(int k);

/// 1 - 2/(d-1); empty when it is not positive.
std::optional<double> algorithm_d_guarantee(double d);

/// The proven per-element floor for a scheme on this instance, if any applies.
std::optional<double> scheme_guarantee(const SchemeSpec& scheme, const Instance& inst);

}  // namespace ocrs
