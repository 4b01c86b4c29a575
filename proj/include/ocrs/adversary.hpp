#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ocrs/core.hpp"
#include "ocrs/schemes.hpp"

namespace ocrs {

/// Revelation order chosen by the adversary.
///
/// Identity and FixedPermutation commit before any realization (fixed-order
/// adversary). ActivesFirst reveals every active element, index-ascending,
/// then every inactive one; it needs the realization and so models the
/// restricted almighty class.
struct Order {
  enum class Kind { Identity, FixedPermutation, ActivesFirst };

  Kind kind = Kind::Identity;
  std::vector<std::size_t> perm;  ///< only for FixedPermutation

  static Order identity() { return {}; }
  static Order fixed(std::vector<std::size_t> perm) { return {Kind::FixedPermutation, std::move(perm)}; }
  static Order actives_first() { return {Kind::ActivesFirst, {}}; }

  bool activation_independent() const { return kind != Kind::ActivesFirst; }
  std::string describe() const;
};

/// Permutation of element indices for one realization.
std::vector<std::size_t> realize_order(const Order& order, const ActivationPattern& pattern);

/// Activation-independent order of length n; throws for ActivesFirst.
std::vector<std::size_t> committed_order(const Order& order, std::size_t n);

std::vector<std::size_t> identity_permutation(std::size_t n);
std::vector<std::size_t> random_permutation(std::size_t n, RandomSource& rng);

struct TrialOutcome {
  ActivationPattern pattern;
  std::vector<std::size_t> order;
  Trace trace;
};

/// Samples R(x), realizes the order, and runs a fresh policy on it.
TrialOutcome run_trial(const SchemeSpec& scheme, const Instance& inst, const Order& order,
                       RandomSource& rng, const PolicyOptions& options = {});

}  // namespace ocrs
