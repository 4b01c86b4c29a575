#include "ocrs/walk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ocrs/schemes.hpp"

namespace ocrs {

double snapped_ceil(double v) {
  const double r = std::round(v);
  if (std::abs(v - r) <= kIntegerSnap) return r;
  return std::ceil(v);
}

WalkPair build_walks(const Trace& trace, const Eigen::Ref<const Eigen::VectorXd>& x_ordered,
                     double d) {
  if (trace.scheme.kind != SchemeKind::AlgorithmD || trace.scheme.wrap != 1.0)
    throw SchemeMismatch("walks are defined for AlgorithmD traces, got " + trace.scheme.name());
  if (trace.scheme.d != d)
    throw SchemeMismatch("trace was produced with d = " + std::to_string(trace.scheme.d));
  const auto n = static_cast<Eigen::Index>(trace.steps.size());
  if (x_ordered.size() != n)
    throw LengthMismatch(static_cast<std::size_t>(n), static_cast<std::size_t>(x_ordered.size()));

  const Eigen::VectorXd prefix = compensated_prefix_sums(x_ordered);
  WalkPair out{Eigen::VectorXd(n), Eigen::VectorXd(n), d};
  long actives = 0;
  for (Eigen::Index t = 0; t < n; ++t) {
    const TraceStep& s = trace.steps[static_cast<std::size_t>(t)];
    actives += s.active ? 1 : 0;
    out.W[t] = static_cast<double>(actives) - prefix[t];
    out.S[t] = static_cast<double>(s.count_after) - prefix[t];
  }
  return out;
}

std::vector<std::size_t> new_integral_heights(const Eigen::Ref<const Eigen::VectorXd>& W, double d) {
  std::vector<std::size_t> out;
  double highest = -std::numeric_limits<double>::infinity();
  for (Eigen::Index t = 0; t < W.size(); ++t) {
    const double c = snapped_ceil(W[t] - d);
    if (c > 0.0 && c > highest) out.push_back(static_cast<std::size_t>(t));
    highest = std::max(highest, c);
  }
  return out;
}

Eigen::VectorXd reversed_process(const Eigen::Ref<const Eigen::VectorXd>& W, std::size_t m) {
  if (m < 1 || m > static_cast<std::size_t>(W.size()))
    throw IndexOutOfRange(m, static_cast<std::size_t>(W.size()));
  auto walk = [&](std::size_t j) { return j == 0 ? 0.0 : W[static_cast<Eigen::Index>(j - 1)]; };
  Eigen::VectorXd Q(static_cast<Eigen::Index>(m));
  const double end = walk(m - 1);
  for (std::size_t i = 0; i < m; ++i) Q[static_cast<Eigen::Index>(i)] = walk(m - i - 1) - end;
  return Q;
}

double martingale_tail_bound(double a, double b, double K) {
  if (!(a > 0.0) || !(b < 0.0) || !(K > 0.0))
    throw BadParameters("martingale bound needs a > 0, b < 0, K > 0");
  return (a + K) / (-b);
}

TailEstimate martingale_tail_estimate(const Instance& inst, const Order& order, double d, double a,
                                      std::size_t trials, std::uint64_t seed) {
  if (!(a > 0.0)) throw BadParameters("a must be positive");
  if (!(d > 1.0)) throw BadParameters("d must exceed 1 so that b = -(d-1) < 0");
  if (trials < 1000) throw BadParameters("need at least 1000 trials");
  const std::size_t n = inst.size();
  if (n == 0) throw BadParameters("empty instance");
  const double b = -(d - 1.0);

  std::size_t hits = 0;
  Eigen::VectorXd W(static_cast<Eigen::Index>(n));
  for (std::size_t trial = 0; trial < trials; ++trial) {
    RandomSource rng(seed, trial);
    const ActivationPattern pattern = sample_activation(inst, rng);
    const auto perm = realize_order(order, pattern);
    const Eigen::VectorXd prefix = order_prefix_sums(inst, perm);
    long actives = 0;
    for (std::size_t t = 0; t < n; ++t) {
      actives += pattern[perm[t]] ? 1 : 0;
      W[static_cast<Eigen::Index>(t)] = static_cast<double>(actives) - prefix[static_cast<Eigen::Index>(t)];
    }
    const Eigen::VectorXd Q = reversed_process(W, n);
    const double running_max =
        n > 1 ? Q.tail(static_cast<Eigen::Index>(n - 1)).maxCoeff() : -std::numeric_limits<double>::infinity();
    if (running_max < a && Q[static_cast<Eigen::Index>(n - 1)] <= b) ++hits;
  }
  TailEstimate est;
  est.trials = trials;
  est.p_hat = static_cast<double>(hits) / static_cast<double>(trials);
  est.std_err = std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(trials));
  est.bound = martingale_tail_bound(a, b, 1.0);
  return est;
}

double WalkStudy::discard_probability(std::size_t t) const {
  return static_cast<double>(active_discarded[t]) / static_cast<double>(trials);
}

double WalkStudy::discard_std_err(std::size_t t) const {
  const double p = discard_probability(t);
  return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

double WalkStudy::discard_bound(std::size_t t) const {
  return 2.0 * x_ordered[static_cast<Eigen::Index>(t)] / (d - 1.0);
}

double WalkStudy::increment_mean(std::size_t t) const {
  return increment_sum[static_cast<Eigen::Index>(t)] / static_cast<double>(trials);
}

double WalkStudy::increment_std_err(std::size_t t) const {
  const double x = x_ordered[static_cast<Eigen::Index>(t)];
  return std::sqrt(x * (1.0 - x) / static_cast<double>(trials));
}

WalkStudy walk_study(const Instance& inst, const Order& order, double d, std::size_t trials,
                     std::uint64_t seed) {
  if (trials < 1) throw BadParameters("need at least one trial");
  if (!(d > 1.0)) throw BadParameters("walk study needs d > 1");
  const std::size_t n = inst.size();
  WalkStudy study;
  study.d = d;
  study.trials = trials;
  study.order = committed_order(order, n);
  study.x_ordered = x_in_order(inst, study.order);
  study.active_discarded.assign(n, 0);
  study.increment_sum = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));

  const SchemeSpec scheme = SchemeSpec::algorithm_d(d);
  Policy policy(scheme, inst, study.order);
  std::vector<std::size_t> discarded;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    RandomSource rng(seed, trial);
    const ActivationPattern pattern = sample_activation(inst, rng);
    policy.reset();
    const Trace trace = run_policy(policy, pattern, rng);
    const WalkPair walks = build_walks(trace, study.x_ordered, d);

    discarded.clear();
    long discarded_so_far = 0;
    bool difference_ok = true;
    bool buffer_ok = true;
    for (std::size_t t = 0; t < n; ++t) {
      const TraceStep& s = trace.steps[t];
      const auto i = static_cast<Eigen::Index>(t);
      if (s.active && !s.selected) {
        ++discarded_so_far;
        discarded.push_back(t);
        ++study.active_discarded[t];
      }
      study.increment_sum[i] += (s.active ? 1.0 : 0.0) - study.x_ordered[i];
      const double gap = walks.W[i] - walks.S[i];
      if (std::abs(gap - static_cast<double>(discarded_so_far)) > kIntegerSnap) difference_ok = false;
      if (walks.S[i] > d + kIntegerSnap) buffer_ok = false;
    }
    if (!difference_ok) ++study.difference_mismatches;
    if (!buffer_ok) ++study.buffer_violations;
    if (new_integral_heights(walks.W, d) != discarded) ++study.height_mismatches;
    if (trace.steps.empty() ? false : trace.steps.back().count_after > inst.k()) ++study.over_budget;
  }
  study.increment_count_checked = n;
  return study;
}

}  // namespace ocrs
