#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "ocrs/core.hpp"
#include "ocrs/scheme_spec.hpp"
#include "ocrs/trace.hpp"

namespace ocrs {

struct PolicyOptions {
  /// Amplitude, in units of sqrt(k), of a uniform perturbation added to the
  /// prefix sums seen by the threshold schemes. Zero disables it.
  double prefix_noise = 0.0;
  std::uint64_t noise_seed = 0;
};

/// A stateful online selection rule bound to one instance and revelation order.
///
/// Every scheme here decides from its selected count (per part for the
/// partition scheme), the position in the order, the active flag and at most
/// two coins:
///   - a demotion coin with probability `demotion_probability()`, drawn for
///     every active element before anything else (the scale_reduction wrapper);
///   - an acceptance coin with probability `coin_probability()`, drawn only for
///     active, not demoted, eligible elements (SimpleOcrs).
/// An element is eligible when `count + 1 <= threshold(position)`.
///
/// Threshold schemes use `scale * prefix[t] + slack`:
///   SimpleOcrs   scale = 1 - 1/sqrt(k), slack = sqrt(k)
///   AlgorithmD   scale = 1,             slack = d
/// Capacity schemes (greedy family) use the quota of the element's part.
class Policy {
 public:
  Policy(const SchemeSpec& spec, const Instance& inst, std::span<const std::size_t> order,
         const PolicyOptions& options = {});

  const SchemeSpec& spec() const { return spec_; }
  int k() const { return k_; }
  std::size_t size() const { return order_->size(); }
  std::size_t element_at(std::size_t position) const { return (*order_)[position]; }

  int count() const { return total_; }
  const std::vector<int>& part_counts() const { return counts_; }
  std::size_t part_count() const { return quotas_.size(); }
  int part_quota(std::size_t part) const { return quotas_[part]; }
  std::size_t part_at(std::size_t position) const {
    return part_at_ ? static_cast<std::size_t>((*part_at_)[position]) : 0;
  }

  bool uses_prefix_sums() const { return buffer_rule_; }
  double threshold(std::size_t position) const;
  bool eligible_with(std::size_t position, int count_in_part) const {
    return static_cast<double>(count_in_part) + 1.0 <= threshold(position);
  }

  double demotion_probability() const { return demote_; }
  double coin_probability() const { return accept_; }
  /// Probability an active, eligible element is selected.
  double acceptance_probability() const { return demote_ * accept_; }

  void reset();
  bool same_state(const Policy& other) const { return counts_ == other.counts_; }

  /// One step. `coin(p)` must return true with probability p; it is only
  /// called for 0 < p < 1.
  template <typename CoinFn>
  TraceStep step(std::size_t position, bool active, CoinFn&& coin);

  TraceStep step(std::size_t position, bool active, RandomSource& rng) {
    return step(position, active, [&rng](double p) { return rng.bernoulli(p); });
  }

  friend Policy scale_reduction(Policy inner, double b);

 private:
  SchemeSpec spec_;
  int k_ = 0;
  bool buffer_rule_ = false;
  double scale_ = 1.0;
  double slack_ = 0.0;
  double demote_ = 1.0;
  double accept_ = 1.0;
  std::shared_ptr<const std::vector<std::size_t>> order_;
  std::shared_ptr<const Eigen::VectorXd> prefix_;
  std::shared_ptr<const std::vector<int>> part_at_;
  std::vector<int> quotas_;
  std::vector<int> counts_;
  int total_ = 0;
};

/// Subsampling reduction: every active element is independently demoted to
/// inactive with probability 1-b before `inner` sees it, and `inner` runs on
/// the scaled vector b*x. Throws BadParameters unless b is in [0,1].
Policy scale_reduction(Policy inner, double b);

/// Runs `policy` over every position; `pattern` is indexed by element.
Trace run_policy(Policy& policy, const ActivationPattern& pattern, RandomSource& rng);

template <typename CoinFn>
TraceStep Policy::step(std::size_t position, bool active, CoinFn&& coin) {
  TraceStep rec;
  rec.element = (*order_)[position];
  rec.active = active;
  const std::size_t part = part_at(position);
  rec.eligible = eligible_with(position, counts_[part]);
  bool take = active;
  if (take && demote_ < 1.0) {
    const bool kept = demote_ > 0.0 && coin(demote_);
    rec.coin = kept;
    take = kept;
  }
  if (take && !rec.eligible) take = false;
  if (take && accept_ < 1.0) {
    const bool accepted = accept_ > 0.0 && coin(accept_);
    rec.coin = accepted;
    take = accepted;
  }
  if (take) {
    ++counts_[part];
    ++total_;
  }
  rec.selected = take;
  rec.count_after = total_;
  return rec;
}

}  // namespace ocrs
