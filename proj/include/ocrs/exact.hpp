#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ocrs/adversary.hpp"
#include "ocrs/core.hpp"
#include "ocrs/schemes.hpp"

namespace ocrs {

enum class Method { ExactDP, BruteForce, MonteCarlo };

std::string method_name(Method method);

/// Per-element P(selected | active), indexed by original element.
struct SelectabilityReport {
  Eigen::VectorXd per_element;
  Eigen::VectorXd std_err;        ///< zero for the exact methods
  std::vector<bool> absent;       ///< Monte Carlo only: never active in the sample
  double min_value = std::numeric_limits<double>::quiet_NaN();
  Method method = Method::ExactDP;
  std::size_t trials = 0;
  SchemeSpec scheme;
  std::string order;
  std::string instance_digest;
  std::vector<std::string> warnings;
};

/// Exact conditional selection probability at every position of the policy's
/// order, by propagating the distribution of the selected count (one
/// distribution per part). Valid because each scheme's decision depends on
/// history only through these counts.
///
/// For the element at position t, P(selected | active) = q * P(count + 1 <= threshold_t)
/// where q is the policy's acceptance probability.
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> conditional_selection_dp(
    const Policy& policy, const Eigen::Ref<const Eigen::VectorXd>& x_ordered) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const std::size_t n = policy.size();
  if (static_cast<std::size_t>(x_ordered.size()) != n)
    throw LengthMismatch(n, static_cast<std::size_t>(x_ordered.size()));

  // Largest count any part can reach.
  std::vector<Eigen::Index> cap(policy.part_count(), 0);
  if (policy.uses_prefix_sums()) {
    double top = 0.0;
    for (std::size_t t = 0; t < n; ++t) top = std::max(top, policy.threshold(t));
    cap[0] = std::min<Eigen::Index>(static_cast<Eigen::Index>(n),
                                    static_cast<Eigen::Index>(std::max(0.0, std::floor(top))));
  } else {
    for (std::size_t p = 0; p < cap.size(); ++p)
      cap[p] = std::min<Eigen::Index>(static_cast<Eigen::Index>(n), policy.part_quota(p));
  }

  std::vector<Vec> dist;
  for (auto c : cap) {
    dist.push_back(Vec::Zero(c + 2));
    dist.back()[0] = Scalar(1);
  }
  const Scalar q = Scalar(policy.acceptance_probability());
  Vec out(static_cast<Eigen::Index>(n));
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t p = policy.part_at(t);
    Vec& d = dist[p];
    Eigen::Index eligible = 0;
    while (eligible <= cap[p] && policy.eligible_with(t, static_cast<int>(eligible))) ++eligible;
    out[static_cast<Eigen::Index>(t)] = q * d.head(eligible).sum();
    if (eligible > 0) {
      const Vec moved = (Scalar(x_ordered[static_cast<Eigen::Index>(t)]) * q) * d.head(eligible);
      d.head(eligible) -= moved;
      d.segment(1, eligible) += moved;
    }
  }
  return out;
}

/// Exact selectability from the count DP. The order must be committed upfront.
SelectabilityReport exact_selectability_dp(const Instance& inst, const SchemeSpec& scheme,
                                           const Order& order);

/// Enumerates all 2^n activation patterns and, within each, every coin
/// outcome of the real policy step. n <= 12.
SelectabilityReport brute_force_selectability(const Instance& inst, const SchemeSpec& scheme,
                                              const Order& order);

inline constexpr std::size_t kBruteForceMaxN = 12;

/// Conditional selection frequencies with binomial standard errors.
/// Trial t uses RandomSource(seed, t).
SelectabilityReport mc_selectability(const Instance& inst, const SchemeSpec& scheme,
                                     const Order& order, std::size_t trials, std::uint64_t seed,
                                     const PolicyOptions& options = {});

}  // namespace ocrs
