#include "ocrs/prophet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <functional>
#include <numeric>
#include <optional>
#include <set>

namespace ocrs {

ValueDistribution ValueDistribution::discrete(std::vector<double> values, std::vector<double> probs) {
  if (values.empty() || values.size() != probs.size())
    throw BadParameters("discrete distribution needs matching non-empty values and probabilities");
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  ValueDistribution d;
  d.kind_ = Kind::Discrete;
  double total = 0.0;
  for (std::size_t i : idx) {
    if (!(values[i] >= 0.0) || !std::isfinite(values[i])) throw BadParameters("values must be finite and >= 0");
    if (!(probs[i] >= 0.0)) throw BadParameters("probabilities must be >= 0");
    total += probs[i];
    if (probs[i] == 0.0) continue;
    if (!d.a_.empty() && d.a_.back() == values[i]) {
      d.b_.back() += probs[i];
    } else {
      d.a_.push_back(values[i]);
      d.b_.push_back(probs[i]);
    }
  }
  if (std::abs(total - 1.0) > 1e-12) throw BadParameters("probabilities must sum to 1");
  d.lo_ = d.a_.front();
  d.hi_ = d.a_.back();
  return d;
}

ValueDistribution ValueDistribution::uniform(double lo, double hi) {
  if (!(lo >= 0.0) || !(hi > lo) || !std::isfinite(hi)) throw BadParameters("uniform needs 0 <= lo < hi");
  ValueDistribution d;
  d.kind_ = Kind::Uniform;
  d.lo_ = lo;
  d.hi_ = hi;
  return d;
}

ValueDistribution ValueDistribution::exponential(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) throw BadParameters("exponential needs rate > 0");
  ValueDistribution d;
  d.kind_ = Kind::Exponential;
  d.lo_ = rate;
  d.hi_ = std::numeric_limits<double>::infinity();
  return d;
}

ValueDistribution ValueDistribution::piecewise_quantile(std::vector<double> u, std::vector<double> q) {
  if (u.size() < 2 || u.size() != q.size()) throw BadParameters("quantile needs at least two matching knots");
  if (u.front() != 0.0 || u.back() != 1.0) throw BadParameters("quantile knots must run from 0 to 1");
  for (std::size_t j = 0; j + 1 < u.size(); ++j) {
    if (!(u[j + 1] > u[j])) throw BadParameters("quantile knots must increase strictly");
    if (!(q[j + 1] >= q[j])) throw BadParameters("quantile must be non-decreasing");
  }
  if (!(q.front() >= 0.0) || !std::isfinite(q.back())) throw BadParameters("quantile values must be finite and >= 0");
  ValueDistribution d;
  d.kind_ = Kind::PiecewiseQuantile;
  d.a_ = std::move(u);
  d.b_ = std::move(q);
  d.lo_ = d.b_.front();
  d.hi_ = d.b_.back();
  return d;
}

double ValueDistribution::survival(double t) const {
  switch (kind_) {
    case Kind::Discrete: {
      double s = 0.0;
      for (std::size_t j = a_.size(); j-- > 0 && a_[j] > t;) s += b_[j];
      return s;
    }
    case Kind::Uniform:
      if (t < lo_) return 1.0;
      if (t >= hi_) return 0.0;
      return (hi_ - t) / (hi_ - lo_);
    case Kind::Exponential:
      return t < 0.0 ? 1.0 : std::exp(-lo_ * t);
    case Kind::PiecewiseQuantile: {
      if (t < b_.front()) return 1.0;
      if (t >= b_.back()) return 0.0;
      // Last knot with q_j <= t; the next one is above t.
      std::size_t j = static_cast<std::size_t>(std::upper_bound(b_.begin(), b_.end(), t) - b_.begin()) - 1;
      const double u_star = a_[j] + (t - b_[j]) / (b_[j + 1] - b_[j]) * (a_[j + 1] - a_[j]);
      return 1.0 - u_star;
    }
  }
  return 0.0;
}

double ValueDistribution::atom(double t) const {
  switch (kind_) {
    case Kind::Discrete: {
      auto it = std::lower_bound(a_.begin(), a_.end(), t);
      return it != a_.end() && *it == t ? b_[static_cast<std::size_t>(it - a_.begin())] : 0.0;
    }
    case Kind::Uniform:
    case Kind::Exponential:
      return 0.0;
    case Kind::PiecewiseQuantile: {
      double m = 0.0;
      for (std::size_t j = 0; j + 1 < a_.size(); ++j)
        if (b_[j] == t && b_[j + 1] == t) m += a_[j + 1] - a_[j];
      return m;
    }
  }
  return 0.0;
}

double ValueDistribution::quantile(double u) const {
  switch (kind_) {
    case Kind::Discrete: {
      double cum = 0.0;
      for (std::size_t j = 0; j + 1 < a_.size(); ++j) {
        cum += b_[j];
        if (u < cum) return a_[j];
      }
      return a_.back();
    }
    case Kind::Uniform:
      return lo_ + u * (hi_ - lo_);
    case Kind::Exponential:
      return -std::log1p(-u) / lo_;
    case Kind::PiecewiseQuantile: {
      std::size_t j = static_cast<std::size_t>(std::upper_bound(a_.begin(), a_.end(), u) - a_.begin()) - 1;
      j = std::min(j, a_.size() - 2);
      if (b_[j] == b_[j + 1]) return b_[j];
      return b_[j] + (u - a_[j]) / (a_[j + 1] - a_[j]) * (b_[j + 1] - b_[j]);
    }
  }
  return 0.0;
}

std::vector<double> ValueDistribution::atoms() const {
  std::vector<double> out;
  if (kind_ == Kind::Discrete) out = a_;
  if (kind_ == Kind::PiecewiseQuantile)
    for (std::size_t j = 0; j + 1 < a_.size(); ++j)
      if (b_[j] == b_[j + 1] && (out.empty() || out.back() != b_[j])) out.push_back(b_[j]);
  return out;
}

double ValueDistribution::support_max() const { return hi_; }

namespace {

double survival_sum(const std::vector<ValueDistribution>& dists, double t) {
  double s = 0.0;
  for (const auto& d : dists) s += d.survival(t);
  return s;
}

double atom_sum(const std::vector<ValueDistribution>& dists, double t) {
  double s = 0.0;
  for (const auto& d : dists) s += d.atom(t);
  return s;
}

Instance make_activation(const std::vector<ValueDistribution>& dists, int k, const Threshold& th) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(dists.size()));
  for (std::size_t i = 0; i < dists.size(); ++i)
    x[static_cast<Eigen::Index>(i)] =
        std::clamp(dists[i].survival(th.T) + th.rho * dists[i].atom(th.T), 0.0, 1.0);
  for (int it = 0; it < 8; ++it) {
    const double total = compensated_sum(x);
    if (total <= k) break;
    x *= std::nextafter(static_cast<double>(k) / total, 0.0);
  }
  return validate_instance(std::move(x), k);
}

}  // namespace

Threshold find_threshold(const std::vector<ValueDistribution>& dists, int k) {
  if (k < 1) throw BadK(k, "need k >= 1");
  if (dists.empty()) throw BadParameters("no distributions");
  const double kd = static_cast<double>(k);
  if (survival_sum(dists, 0.0) <= kd) return {0.0, 0.0};

  std::set<double> atoms;
  for (const auto& d : dists)
    for (double a : d.atoms()) atoms.insert(a);
  for (double a : atoms) {
    const double above = survival_sum(dists, a);
    if (above > kd) continue;
    const double mass = atom_sum(dists, a);
    if (above + mass >= kd) return {a, mass > 0.0 ? std::min(1.0, (kd - above) / mass) : 0.0};
    break;
  }

  double lo = 0.0;
  double hi = 0.0;
  for (const auto& d : dists) hi = std::max(hi, d.support_max());
  if (!std::isfinite(hi)) {
    hi = 1.0;
    while (survival_sum(dists, hi) > kd) hi *= 2.0;
  }
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (survival_sum(dists, mid) > kd ? lo : hi) = mid;
  }
  return {hi, 0.0};
}

ProphetInstance::ProphetInstance(std::vector<ValueDistribution> dists, int k)
    : dists_(std::move(dists)),
      k_(k),
      threshold_(find_threshold(dists_, k)),
      activation_(make_activation(dists_, k, threshold_)) {}

double prophet_value(std::span<const double> values, int k) {
  if (k < 1) throw BadK(k, "need k >= 1");
  std::vector<double> v(values.begin(), values.end());
  if (static_cast<std::size_t>(k) < v.size()) {
    std::nth_element(v.begin(), v.begin() + k, v.end(), std::greater<>());
    v.resize(static_cast<std::size_t>(k));
  }
  std::sort(v.begin(), v.end(), std::greater<>());
  return std::accumulate(v.begin(), v.end(), 0.0);
}

namespace {

GamblerTrial gamble(const ProphetInstance& pinst, const Order& order, RandomSource& rng,
                    const std::function<Policy&(const std::vector<std::size_t>&)>& policy_for) {
  const std::size_t n = pinst.size();
  const Threshold& th = pinst.threshold();
  GamblerTrial out;
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = pinst.distributions()[i].quantile(rng.uniform());
  ActivationPattern pattern;
  pattern.bits.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = out.values[i];
    bool active = v > th.T;
    if (!active && v == th.T && th.rho > 0.0) active = th.rho >= 1.0 || rng.bernoulli(th.rho);
    pattern.bits[i] = active;
  }
  const auto perm = realize_order(order, pattern);
  Policy& policy = policy_for(perm);
  policy.reset();
  const Trace trace = run_policy(policy, pattern, rng);
  std::vector<double> taken;
  for (const TraceStep& s : trace.steps)
    if (s.selected) taken.push_back(out.values[s.element]);
  std::sort(taken.begin(), taken.end(), std::greater<>());
  out.collected = std::accumulate(taken.begin(), taken.end(), 0.0);
  out.selected = static_cast<int>(taken.size());
  out.prophet = prophet_value(out.values, pinst.k());
  return out;
}

}  // namespace

GamblerTrial run_gambler(const ProphetInstance& pinst, const SchemeSpec& scheme, const Order& order,
                         RandomSource& rng, const PolicyOptions& options) {
  std::optional<Policy> policy;
  return gamble(pinst, order, rng, [&](const std::vector<std::size_t>& perm) -> Policy& {
    policy.emplace(scheme, pinst.activation(), perm, options);
    return *policy;
  });
}

CompetitiveRatio competitive_ratio(const ProphetInstance& pinst, const SchemeSpec& scheme,
                                   const Order& order, std::size_t trials, std::uint64_t seed,
                                   const PolicyOptions& options) {
  if (trials < 1000) throw BadParameters("need at least 1000 trials");
  std::optional<Policy> committed;
  if (order.activation_independent())
    committed.emplace(scheme, pinst.activation(), committed_order(order, pinst.size()), options);
  std::optional<Policy> fresh;
  auto policy_for = [&](const std::vector<std::size_t>& perm) -> Policy& {
    if (committed) return *committed;
    fresh.emplace(scheme, pinst.activation(), perm, options);
    return *fresh;
  };

  CompetitiveRatio out;
  out.trials = trials;
  Eigen::VectorXd g(static_cast<Eigen::Index>(trials));
  Eigen::VectorXd p(static_cast<Eigen::Index>(trials));
  for (std::size_t t = 0; t < trials; ++t) {
    RandomSource rng(seed, t);
    const GamblerTrial trial = gamble(pinst, order, rng, policy_for);
    g[static_cast<Eigen::Index>(t)] = trial.collected;
    p[static_cast<Eigen::Index>(t)] = trial.prophet;
    if (trial.collected > trial.prophet * (1.0 + 1e-12) + 1e-12) ++out.dominance_violations;
    if (trial.selected > pinst.k()) ++out.over_budget;
  }
  const double nt = static_cast<double>(trials);
  out.mean_gambler = compensated_sum(g) / nt;
  out.mean_prophet = compensated_sum(p) / nt;
  if (out.mean_prophet <= 0.0) throw DegenerateProphet();
  out.ratio = out.mean_gambler / out.mean_prophet;
  const Eigen::ArrayXd dg = g.array() - out.mean_gambler;
  const Eigen::ArrayXd dp = p.array() - out.mean_prophet;
  const double var_g = (dg * dg).sum() / (nt - 1.0);
  const double var_p = (dp * dp).sum() / (nt - 1.0);
  const double cov = (dg * dp).sum() / (nt - 1.0);
  const double r = out.ratio;
  const double var = std::max(0.0, var_g - 2.0 * r * cov + r * r * var_p) /
                     (out.mean_prophet * out.mean_prophet * nt);
  out.std_err = std::sqrt(var);
  out.ci_low = r - 3.0 * out.std_err;
  out.ci_high = r + 3.0 * out.std_err;
  return out;
}

}  // namespace ocrs
