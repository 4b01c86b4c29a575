#include "ocrs/schemes.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

namespace ocrs {

namespace {

std::string fmt_param(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_param(std::string_view text, std::string_view key) {
  const std::string prefix = std::string(key) + "=";
  if (text.substr(0, prefix.size()) != prefix)
    throw BadParameters("expected '" + prefix + "VALUE', got '" + std::string(text) + "'");
  const std::string value(text.substr(prefix.size()));
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size() || value.empty())
    throw BadParameters("not a number: '" + value + "'");
  return v;
}

}  // namespace

std::string SchemeSpec::name() const {
  std::string out;
  switch (kind) {
    case SchemeKind::SimpleOcrs: out = "simple"; break;
    case SchemeKind::AlgorithmD: out = "algd:d=" + fmt_param(d); break;
    case SchemeKind::NaiveGreedy: out = "greedy"; break;
    case SchemeKind::PartitionGreedy: out = "partition"; break;
    case SchemeKind::ScaledGreedy: out = "scaled:b=" + fmt_param(b); break;
  }
  if (wrap != 1.0) out += (out.find(':') == std::string::npos ? ":" : ",") + ("wrap=" + fmt_param(wrap));
  return out;
}

SchemeSpec parse_scheme(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  std::vector<std::string_view> params;
  if (colon != std::string_view::npos) {
    std::string_view rest = text.substr(colon + 1);
    while (true) {
      const auto comma = rest.find(',');
      params.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }
  SchemeSpec spec;
  std::size_t used = 0;
  if (head == "simple") {
    spec = SchemeSpec::simple();
  } else if (head == "greedy") {
    spec = SchemeSpec::greedy();
  } else if (head == "partition") {
    spec = SchemeSpec::partition();
  } else if (head == "algd") {
    if (params.empty()) throw BadParameters("algd needs d=VALUE");
    spec = SchemeSpec::algorithm_d(parse_param(params[0], "d"));
    used = 1;
  } else if (head == "scaled") {
    if (params.empty()) throw BadParameters("scaled needs b=VALUE");
    spec = SchemeSpec::scaled(parse_param(params[0], "b"));
    used = 1;
  } else {
    throw BadParameters("unknown scheme '" + std::string(text) + "'");
  }
  if (params.size() > used) {
    spec.wrap = parse_param(params[used], "wrap");
    ++used;
  }
  if (params.size() > used) throw BadParameters("trailing parameters in '" + std::string(text) + "'");
  return spec;
}

Policy::Policy(const SchemeSpec& spec, const Instance& inst, std::span<const std::size_t> order,
               const PolicyOptions& options)
    : spec_(spec), k_(inst.k()) {
  check_permutation(order, inst.size());
  order_ = std::make_shared<const std::vector<std::size_t>>(order.begin(), order.end());
  quotas_ = {k_};

  const double sqrt_k = std::sqrt(static_cast<double>(k_));
  switch (spec.kind) {
    case SchemeKind::SimpleOcrs:
      buffer_rule_ = true;
      scale_ = 1.0 - 1.0 / sqrt_k;
      slack_ = sqrt_k;
      accept_ = 1.0 - 1.0 / sqrt_k;
      break;
    case SchemeKind::AlgorithmD:
      if (!(spec.d > 0.0)) throw BadParameters("AlgorithmD needs d > 0");
      buffer_rule_ = true;
      slack_ = spec.d;
      break;
    case SchemeKind::NaiveGreedy:
      break;
    case SchemeKind::PartitionGreedy: {
      if (!inst.has_partition()) throw MissingPartition();
      quotas_.clear();
      for (const Part& p : inst.partition()) quotas_.push_back(p.quota);
      auto at = std::make_shared<std::vector<int>>(order.size());
      for (std::size_t t = 0; t < order.size(); ++t) (*at)[t] = inst.part_of()[order[t]];
      part_at_ = std::move(at);
      break;
    }
    case SchemeKind::ScaledGreedy:
      if (!(spec.b >= 0.0 && spec.b <= 1.0)) throw BadParameters("ScaledGreedy needs b in [0,1]");
      demote_ = spec.b;
      scale_ = spec.b;
      break;
  }
  if (!(spec.wrap >= 0.0 && spec.wrap <= 1.0)) throw BadParameters("wrap scale must lie in [0,1]");
  demote_ *= spec.wrap;
  scale_ *= spec.wrap;

  if (buffer_rule_) {
    Eigen::VectorXd prefix = order_prefix_sums(inst, order);
    if (options.prefix_noise > 0.0) {
      RandomSource noise(options.noise_seed, 0);
      const double amp = options.prefix_noise * sqrt_k;
      for (Eigen::Index t = 0; t < prefix.size(); ++t) prefix[t] += amp * (2.0 * noise.uniform() - 1.0);
    }
    prefix_ = std::make_shared<const Eigen::VectorXd>(std::move(prefix));
  }
  counts_.assign(quotas_.size(), 0);
}

double Policy::threshold(std::size_t position) const {
  if (buffer_rule_) return scale_ * (*prefix_)[static_cast<Eigen::Index>(position)] + slack_;
  return static_cast<double>(quotas_[part_at(position)]);
}

void Policy::reset() {
  counts_.assign(quotas_.size(), 0);
  total_ = 0;
}

Policy scale_reduction(Policy inner, double b) {
  if (!(b >= 0.0 && b <= 1.0)) throw BadParameters("scale_reduction needs b in [0,1]");
  inner.demote_ *= b;
  inner.scale_ *= b;
  inner.spec_.wrap *= b;
  inner.reset();
  return inner;
}

Trace run_policy(Policy& policy, const ActivationPattern& pattern, RandomSource& rng) {
  if (pattern.size() != policy.size()) throw LengthMismatch(policy.size(), pattern.size());
  Trace trace;
  trace.scheme = policy.spec();
  trace.k = policy.k();
  trace.steps.reserve(policy.size());
  for (std::size_t t = 0; t < policy.size(); ++t)
    trace.steps.push_back(policy.step(t, pattern[policy.element_at(t)], rng));
  return trace;
}

}  // namespace ocrs
