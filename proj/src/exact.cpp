#include "ocrs/exact.hpp"

#include <algorithm>
#include <utility>


namespace ocrs {

namespace {

SelectabilityReport make_report(const Instance& inst, const SchemeSpec& scheme, const Order& order,
                                Method method) {
  SelectabilityReport r;
  const auto n = static_cast<Eigen::Index>(inst.size());
  r.per_element = Eigen::VectorXd::Zero(n);
  r.std_err = Eigen::VectorXd::Zero(n);
  r.absent.assign(inst.size(), false);
  r.method = method;
  r.scheme = scheme;
  r.order = order.describe();
  r.instance_digest = inst.digest();
  const double k = static_cast<double>(inst.k());
  if (scheme.kind == SchemeKind::AlgorithmD && inst.total() > k - scheme.d + kBudgetSlack)
    r.warnings.push_back("x is outside (1-d/k)*P_k: AlgorithmD may select more than k elements");
  return r;
}

void finish(SelectabilityReport& r) {
  double lo = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < r.per_element.size(); ++i)
    if (!r.absent[static_cast<std::size_t>(i)]) lo = std::min(lo, r.per_element[i]);
  r.min_value = std::isinf(lo) ? std::numeric_limits<double>::quiet_NaN() : lo;
}

}  // namespace

std::string method_name(Method method) {
  switch (method) {
    case Method::ExactDP: return "exact-dp";
    case Method::BruteForce: return "brute-force";
    case Method::MonteCarlo: return "monte-carlo";
  }
  return "?";
}

SelectabilityReport exact_selectability_dp(const Instance& inst, const SchemeSpec& scheme,
                                           const Order& order) {
  if (!order.activation_independent())
    throw UnsupportedScheme("exact DP needs an order committed before activation");
  const auto perm = committed_order(order, inst.size());
  const Policy policy(scheme, inst, perm);
  SelectabilityReport r = make_report(inst, scheme, order, Method::ExactDP);
  const Eigen::VectorXd probs = conditional_selection_dp(policy, x_in_order(inst, perm));
  for (std::size_t t = 0; t < perm.size(); ++t)
    r.per_element[static_cast<Eigen::Index>(perm[t])] = probs[static_cast<Eigen::Index>(t)];
  finish(r);
  return r;
}

SelectabilityReport brute_force_selectability(const Instance& inst, const SchemeSpec& scheme,
                                              const Order& order) {
  const std::size_t n = inst.size();
  if (n > kBruteForceMaxN) throw TooLarge("brute force n", static_cast<long long>(n), kBruteForceMaxN);
  if (!order.activation_independent())
    throw UnsupportedScheme("brute force needs an order committed before activation");
  const auto perm = committed_order(order, n);
  const Policy fresh(scheme, inst, perm);
  SelectabilityReport r = make_report(inst, scheme, order, Method::BruteForce);

  std::vector<double> selected_at(n);
  std::vector<std::pair<Policy, double>> states, next;
  std::vector<std::vector<bool>> scripts;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::fill(selected_at.begin(), selected_at.end(), 0.0);
    states.assign(1, {fresh, 1.0});
    for (std::size_t t = 0; t < n; ++t) {
      const bool active = (mask >> perm[t]) & 1u;
      next.clear();
      for (const auto& [policy, prob] : states) {
        // Replay the step under every coin script it asks for.
        scripts.assign(1, {});
        while (!scripts.empty()) {
          const std::vector<bool> script = std::move(scripts.back());
          scripts.pop_back();
          Policy trial = policy;
          double weight = prob;
          std::size_t used = 0;
          bool incomplete = false;
          const TraceStep rec = trial.step(t, active, [&](double p) {
            if (used < script.size()) {
              const bool c = script[used++];
              weight *= c ? p : 1.0 - p;
              return c;
            }
            incomplete = true;
            return false;
          });
          if (incomplete) {
            auto heads = script;
            heads.push_back(true);
            auto tails = script;
            tails.push_back(false);
            scripts.push_back(std::move(tails));
            scripts.push_back(std::move(heads));
            continue;
          }
          if (rec.selected) selected_at[t] += weight;
          auto same = std::find_if(next.begin(), next.end(),
                                   [&](const auto& s) { return s.first.same_state(trial); });
          if (same == next.end())
            next.emplace_back(std::move(trial), weight);
          else
            same->second += weight;
        }
      }
      std::swap(states, next);
    }
    // P(selected | active_i) = sum over patterns with i active of
    // prod_{j != i} P(a_j) * P(selected_i | pattern).
    for (std::size_t t = 0; t < n; ++t) {
      const std::size_t i = perm[t];
      if (!((mask >> i) & 1u)) continue;
      double w = 1.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        w *= ((mask >> j) & 1u) ? inst.x(j) : 1.0 - inst.x(j);
      }
      r.per_element[static_cast<Eigen::Index>(i)] += w * selected_at[t];
    }
  }
  finish(r);
  return r;
}

SelectabilityReport mc_selectability(const Instance& inst, const SchemeSpec& scheme,
                                     const Order& order, std::size_t trials, std::uint64_t seed,
                                     const PolicyOptions& options) {
  if (trials < 1) throw BadParameters("need at least one trial");
  const std::size_t n = inst.size();
  SelectabilityReport r = make_report(inst, scheme, order, Method::MonteCarlo);
  r.trials = trials;
  std::vector<std::uint64_t> active_count(n, 0), selected_count(n, 0);

  std::optional<Policy> committed;
  if (order.activation_independent()) committed.emplace(scheme, inst, committed_order(order, n), options);

  for (std::size_t trial = 0; trial < trials; ++trial) {
    RandomSource rng(seed, trial);
    const ActivationPattern pattern = sample_activation(inst, rng);
    Trace trace;
    if (committed) {
      committed->reset();
      trace = run_policy(*committed, pattern, rng);
    } else {
      Policy policy(scheme, inst, realize_order(order, pattern), options);
      trace = run_policy(policy, pattern, rng);
    }
    for (const TraceStep& s : trace.steps) {
      active_count[s.element] += s.active ? 1 : 0;
      selected_count[s.element] += s.selected ? 1 : 0;
    }
  }
  bool any_absent = false;
  for (std::size_t i = 0; i < n; ++i) {
    const auto idx = static_cast<Eigen::Index>(i);
    if (active_count[i] == 0) {
      r.absent[i] = true;
      any_absent = true;
      r.per_element[idx] = std::numeric_limits<double>::quiet_NaN();
      r.std_err[idx] = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    const double a = static_cast<double>(active_count[i]);
    const double p = static_cast<double>(selected_count[i]) / a;
    r.per_element[idx] = p;
    r.std_err[idx] = std::sqrt(p * (1.0 - p) / a);
  }
  if (any_absent) r.warnings.push_back("some elements were never active in the sample");
  finish(r);
  return r;
}

}  // namespace ocrs
