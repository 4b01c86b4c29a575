#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ocrs/scheme_spec.hpp"

namespace ocrs {

/// One revealed element as seen by a policy.
struct TraceStep {
  std::size_t element = 0;  ///< original element index
  bool active = false;
  bool eligible = false;    ///< outcome of the count/threshold test
  std::optional<bool> coin; ///< absent when no coin was reached
  bool selected = false;
  int count_after = 0;

  bool operator==(const TraceStep&) const = default;
};

struct Trace {
  SchemeSpec scheme;
  int k = 0;
  std::vector<TraceStep> steps;

  bool operator==(const Trace&) const = default;
};

/// First violated trace invariant, if any:
/// count steps by +1 exactly on selections, selected implies active, count <= k.
std::optional<std::string> trace_violation(const Trace& trace);

}  // namespace ocrs
