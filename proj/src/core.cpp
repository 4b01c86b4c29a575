#include "ocrs/core.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>

#include "ocrs/trace.hpp"

namespace ocrs {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct Fnv1a {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  void bytes(const void* p, std::size_t len) {
    const auto* c = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= c[i];
      h *= 0x100000001b3ULL;
    }
  }
  template <typename T>
  void value(const T& v) {
    bytes(&v, sizeof(T));
  }
};

}  // namespace

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream) {
  // Hash the key first so adjacent streams start from unrelated states.
  const std::uint64_t a = splitmix64(seed);
  const std::uint64_t b = splitmix64(a ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  engine_.seed(seq);
}

std::uint64_t RandomSource::below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  // Rejection sampling keeps the draw exactly uniform.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t r;
  do {
    r = engine_();
  } while (r >= limit);
  return r % bound;
}

const std::vector<Part>& Instance::partition() const {
  if (!partition_) throw MissingPartition();
  return *partition_;
}

std::string Instance::digest() const {
  Fnv1a f;
  for (Eigen::Index i = 0; i < x_.size(); ++i) f.value(x_[i]);
  f.value(k_);
  f.value(scale_);
  if (partition_) {
    for (const auto& p : *partition_) {
      f.value(p.quota);
      for (auto m : p.members) f.value(static_cast<std::uint64_t>(m));
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(f.h));
  return buf;
}

double compensated_sum(const Eigen::Ref<const Eigen::VectorXd>& values) {
  double sum = 0.0;
  double carry = 0.0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const double v = values[i];
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      carry += (sum - t) + v;
    else
      carry += (v - t) + sum;
    sum = t;
  }
  return sum + carry;
}

Eigen::VectorXd compensated_prefix_sums(const Eigen::Ref<const Eigen::VectorXd>& values) {
  Eigen::VectorXd out(values.size());
  double sum = 0.0;
  double carry = 0.0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const double v = values[i];
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      carry += (sum - t) + v;
    else
      carry += (v - t) + sum;
    sum = t;
    out[i] = sum + carry;
  }
  return out;
}

Instance validate_instance(Eigen::VectorXd x, int k, double b,
                           std::optional<std::vector<Part>> partition) {
  if (k < 1) throw BadK(k, "budget must be a positive integer");
  if (!(b > 0.0 && b <= 1.0)) throw BadParameters("scale b must lie in (0,1]");
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!(x[i] >= 0.0 && x[i] <= 1.0))
      throw OutOfRangeProbability(static_cast<std::size_t>(i), x[i]);
  }
  const double total = compensated_sum(x);
  const double limit = b * static_cast<double>(k);
  if (total > limit + kBudgetSlack) throw BudgetExceeded(total, limit);

  Instance inst;
  const auto n = static_cast<std::size_t>(x.size());
  if (partition) {
    std::vector<int> owner(n, -1);
    long long quota_sum = 0;
    for (std::size_t p = 0; p < partition->size(); ++p) {
      const Part& part = (*partition)[p];
      if (part.quota < 0) throw BadPartition("negative quota in part " + std::to_string(p));
      quota_sum += part.quota;
      for (auto m : part.members) {
        if (m >= n) throw BadPartition("member " + std::to_string(m) + " out of range");
        if (owner[m] != -1)
          throw BadPartition("element " + std::to_string(m) + " appears in two parts");
        owner[m] = static_cast<int>(p);
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      if (owner[i] == -1) throw BadPartition("element " + std::to_string(i) + " not covered");
    if (quota_sum != k)
      throw BadPartition("quotas sum to " + std::to_string(quota_sum) + ", expected k = " +
                         std::to_string(k));
    inst.part_of_ = std::move(owner);
  }
  inst.x_ = std::move(x);
  inst.k_ = k;
  inst.scale_ = b;
  inst.total_ = total;
  inst.partition_ = std::move(partition);
  return inst;
}

ActivationPattern sample_activation(const Instance& inst, RandomSource& rng) {
  ActivationPattern out;
  out.bits.resize(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i) out.bits[i] = rng.uniform() < inst.x(i);
  return out;
}

void check_permutation(std::span<const std::size_t> order, std::size_t n) {
  if (order.size() != n) throw LengthMismatch(n, order.size());
  std::vector<bool> seen(n, false);
  for (auto e : order) {
    if (e >= n) throw IndexOutOfRange(e, n);
    if (seen[e]) throw BadParameters("order repeats element " + std::to_string(e));
    seen[e] = true;
  }
}

Eigen::VectorXd x_in_order(const Instance& inst, std::span<const std::size_t> order) {
  check_permutation(order, inst.size());
  Eigen::VectorXd out(static_cast<Eigen::Index>(order.size()));
  for (std::size_t t = 0; t < order.size(); ++t) out[static_cast<Eigen::Index>(t)] = inst.x(order[t]);
  return out;
}

Eigen::VectorXd order_prefix_sums(const Instance& inst, std::span<const std::size_t> order) {
  return compensated_prefix_sums(x_in_order(inst, order));
}

std::optional<std::string> trace_violation(const Trace& trace) {
  int count = 0;
  for (std::size_t t = 0; t < trace.steps.size(); ++t) {
    const TraceStep& s = trace.steps[t];
    const std::string at = "step " + std::to_string(t) + ": ";
    if (s.selected && !s.active) return at + "inactive element selected";
    const int expected = count + (s.selected ? 1 : 0);
    if (s.count_after != expected)
      return at + "count_after " + std::to_string(s.count_after) + " != " + std::to_string(expected);
    if (s.count_after > trace.k)
      return at + "count " + std::to_string(s.count_after) + " exceeds k = " +
             std::to_string(trace.k);
    count = s.count_after;
  }
  return std::nullopt;
}

}  // namespace ocrs
