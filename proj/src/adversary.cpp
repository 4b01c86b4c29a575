#include "ocrs/adversary.hpp"

#include <numeric>

namespace ocrs {

std::string Order::describe() const {
  switch (kind) {
    case Kind::Identity: return "identity";
    case Kind::FixedPermutation: return "perm";
    case Kind::ActivesFirst: return "actives-first";
  }
  return "?";
}

std::vector<std::size_t> identity_permutation(std::size_t n) {
  std::vector<std::size_t> out(n);
  std::iota(out.begin(), out.end(), std::size_t{0});
  return out;
}

std::vector<std::size_t> random_permutation(std::size_t n, RandomSource& rng) {
  auto out = identity_permutation(n);
  // Fisher-Yates with an exact uniform index draw.
  for (std::size_t i = n; i > 1; --i) std::swap(out[i - 1], out[rng.below(i)]);
  return out;
}

std::vector<std::size_t> committed_order(const Order& order, std::size_t n) {
  switch (order.kind) {
    case Order::Kind::Identity: return identity_permutation(n);
    case Order::Kind::FixedPermutation:
      check_permutation(order.perm, n);
      return order.perm;
    case Order::Kind::ActivesFirst:
      throw BadParameters("actives-first order depends on the realization");
  }
  return {};
}

std::vector<std::size_t> realize_order(const Order& order, const ActivationPattern& pattern) {
  const std::size_t n = pattern.size();
  if (order.kind == Order::Kind::FixedPermutation && order.perm.size() != n)
    throw LengthMismatch(order.perm.size(), n);
  if (order.activation_independent()) return committed_order(order, n);
  std::vector<std::size_t> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    if (pattern[i]) out.push_back(i);
  for (std::size_t i = 0; i < n; ++i)
    if (!pattern[i]) out.push_back(i);
  return out;
}

TrialOutcome run_trial(const SchemeSpec& scheme, const Instance& inst, const Order& order,
                       RandomSource& rng, const PolicyOptions& options) {
  TrialOutcome out;
  out.pattern = sample_activation(inst, rng);
  out.order = realize_order(order, out.pattern);
  Policy policy(scheme, inst, out.order, options);
  out.trace = run_policy(policy, out.pattern, rng);
  return out;
}

}  // namespace ocrs
