#include "ocrs/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "ocrs/random.hpp"

namespace ocrs {

LpSolution lp_cstar(int k) {
  if (k < 1) throw BadK(k, "need k >= 1");
  LpSolution best;
  best.k = k;
  best.coefficients = half_binomial_weights(k);
  const Eigen::VectorXd& w = best.coefficients;  // w[m] = P(Bin(2k-1, 1/2) = m)
  const Eigen::VectorXd cdf = compensated_prefix_sums(w);
  const long last = 2L * k - 1;
  auto cdf_at = [&](long m) { return m < 0 ? 0.0 : m >= last ? 1.0 : std::min(1.0, cdf[m]); };
  auto pmf_at = [&](long m) { return (m < 0 || m > last) ? 0.0 : w[m]; };

  best.c_star = -1.0;
  const double kd = static_cast<double>(k);
  for (int a = 0; a <= k; ++a) {
    const long level = static_cast<long>(k) + a;  // number of entries at height x
    const double below = cdf_at(level - 1);
    // Vertex x = y = k/(k+a+1).
    const double xy = kd / static_cast<double>(level + 1);
    const double v_flat = xy * below + xy * pmf_at(level);
    // Vertex x = k/(k+a), y = 0.
    const double xs = kd / static_cast<double>(level);
    const double v_step = xs * below;
    // The origin has objective 0 and never wins.
    if (v_flat > best.c_star) {
      best.c_star = v_flat;
      best.a = a;
      best.x = xy;
      best.y = level + 1 <= 2L * k ? xy : 0.0;
    }
    if (v_step > best.c_star) {
      best.c_star = v_step;
      best.a = a;
      best.x = xs;
      best.y = 0.0;
    }
  }
  return best;
}

LpOracleResult lp_oracle(int k, std::size_t probes, std::uint64_t seed) {
  if (k < 1) throw BadK(k, "need k >= 1");
  if (k > 200) throw TooLarge("lp_oracle k", k, 200);
  const int n = 2 * k;
  std::vector<long double> w(static_cast<std::size_t>(n));
  w[0] = std::ldexp(1.0L, -(2 * k - 1));
  for (int i = 1; i < n; ++i)
    w[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i - 1)] *
                                     static_cast<long double>(2 * k - i) / static_cast<long double>(i);
  std::vector<long double> cum(static_cast<std::size_t>(n) + 1, 0.0L);
  for (int j = 1; j <= n; ++j) cum[static_cast<std::size_t>(j)] = cum[static_cast<std::size_t>(j - 1)] + w[static_cast<std::size_t>(j - 1)];

  // Non-increasing non-negative f is a non-negative combination of prefix
  // indicators 1[1..j]; with sum(f) <= k the feasible set is the simplex with
  // vertices 0 and (k/j) 1[1..j], so these candidates exhaust the vertices.
  const long double kl = k;
  LpOracleResult out;
  long double best = 0.0L;
  for (int j = 1; j <= n; ++j) {
    const long double step = kl / j * cum[static_cast<std::size_t>(j)];
    if (step > best) {
      best = step;
      out.best_prefix = j;
    }
    if (j < n) {
      const long double xy = kl / (j + 1);
      const long double flat = xy * cum[static_cast<std::size_t>(j)] + xy * w[static_cast<std::size_t>(j)];
      if (flat > best) {
        best = flat;
        out.best_prefix = j + 1;
      }
    }
  }
  out.c_star = static_cast<double>(best);

  RandomSource rng(seed, static_cast<std::uint64_t>(k));
  std::vector<long double> f(static_cast<std::size_t>(n));
  long double best_probe = 0.0L;
  for (std::size_t p = 0; p < probes; ++p) {
    if (p % 2 == 0) {
      // Generic: cumulative sums of sparse random increments from the right.
      long double acc = 0.0L;
      for (int i = n - 1; i >= 0; --i) {
        const double u = rng.uniform();
        acc += u * u * u;
        f[static_cast<std::size_t>(i)] = acc;
      }
    } else {
      // Two-level near the optimum's shape, with a random tail.
      const int j = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      const long double y = rng.uniform();
      for (int i = 0; i < n; ++i)
        f[static_cast<std::size_t>(i)] = i < j ? 1.0L : i == j ? y : 0.0L;
    }
    long double sum = 0.0L;
    for (auto v : f) sum += v;
    if (sum <= 0.0L) continue;
    const long double scale = kl / sum;
    long double obj = 0.0L;
    for (int i = 0; i < n; ++i) obj += f[static_cast<std::size_t>(i)] * scale * w[static_cast<std::size_t>(i)];
    best_probe = std::max(best_probe, obj);
  }
  out.best_probe = static_cast<double>(best_probe);
  out.probes = probes;
  return out;
}

double cstar_upper_envelope(int k, int a) {
  if (k < 1) throw BadK(k, "need k >= 1");
  if (a < 0 || a > k) throw RangeViolation("a must lie in [0,k]");
  const BinomialSpec s{2 * static_cast<std::int64_t>(k) - 1, 0.5};
  return static_cast<double>(k) / static_cast<double>(k + a) * binom_cdf(s, k + a);
}

double impossibility_curve(double k) {
  if (!(k >= 2.0)) throw BadK(static_cast<long long>(k), "need k >= 2");
  return 1.0 - 0.01 * std::sqrt(std::log(k) / k);
}

std::vector<int> geometric_k_grid(int kmin, int kmax, int points) {
  if (kmin < 1 || kmax < kmin || points < 1) throw BadParameters("bad k grid");
  std::set<int> ks;
  if (points == 1) return {kmin};
  const double ratio = std::log(static_cast<double>(kmax) / kmin) / (points - 1);
  for (int i = 0; i < points; ++i)
    ks.insert(static_cast<int>(std::lround(kmin * std::exp(ratio * i))));
  ks.insert(kmin);
  ks.insert(kmax);
  return {ks.begin(), ks.end()};
}

ImpossibilitySweep impossibility_sweep(std::span<const int> ks) {
  ImpossibilitySweep out;
  out.ks.assign(ks.begin(), ks.end());
  std::sort(out.ks.begin(), out.ks.end());
  for (int k : out.ks) {
    out.c_star.push_back(lp_cstar(k).c_star);
    out.curve.push_back(impossibility_curve(k));
  }
  // Walk back from the largest k while the curve dominates.
  for (std::size_t i = out.ks.size(); i-- > 0;) {
    if (out.c_star[i] > out.curve[i]) break;
    out.k0 = out.ks[i];
  }
  return out;
}

HksGuarantee hks_guarantee(int k) {
  if (k < 3) throw BadK(k, "need k >= 3 so that b > 0");
  HksGuarantee g;
  const double kd = static_cast<double>(k);
  g.b = 1.0 - std::sqrt(2.0 * std::log(kd) / kd);
  g.c = 1.0 - 1.0 / kd;
  g.bc = g.b * g.c;
  return g;
}

double chernoff_tail(double b, int k) {
  const double gap = 1.0 - b;
  return std::exp(-gap * gap * static_cast<double>(k) / 2.0);
}

double anti_concentration_lower(std::int64_t n, double kprime) {
  if (n <= 0 || n % 2 != 0) throw RangeViolation("n must be positive and even");
  const double nd = static_cast<double>(n);
  if (kprime < nd / 2.0 || kprime > 5.0 * nd / 8.0)
    throw RangeViolation("k' must lie in [n/2, 5n/8]");
  const double gap = 0.5 - kprime / nd;
  return std::exp(-16.0 * nd * gap * gap) / 15.0;
}

double greedy_hard_instance_value(double b, int k) {
  if (k < 1) throw BadK(k, "need k >= 1");
  return b * binom_cdf({2 * static_cast<std::int64_t>(k) - 1, b / 2.0}, k - 1);
}

GreedyFrontier greedy_bc_frontier(int k, std::size_t grid) {
  if (k < 1) throw BadK(k, "need k >= 1");
  if (grid < 2) throw BadParameters("grid needs at least 2 points");
  GreedyFrontier best{0.0, -1.0};
  std::size_t best_j = 0;
  for (std::size_t j = 1; j <= grid; ++j) {
    const double b = static_cast<double>(j) / static_cast<double>(grid);
    const double v = greedy_hard_instance_value(b, k);
    if (v > best.value) {
      best = {b, v};
      best_j = j;
    }
  }
  double lo = static_cast<double>(best_j - 1) / static_cast<double>(grid);
  double hi = std::min(1.0, static_cast<double>(best_j + 1) / static_cast<double>(grid));
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = greedy_hard_instance_value(c, k);
  double fd = greedy_hard_instance_value(d, k);
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = greedy_hard_instance_value(c, k);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = greedy_hard_instance_value(d, k);
    }
  }
  const double mid = 0.5 * (lo + hi);
  const double fm = greedy_hard_instance_value(mid, k);
  if (fm > best.value) best = {mid, fm};
  return best;
}

std::optional<double> ocrs_guarantee(int k) {
  const double r = std::sqrt(static_cast<double>(k));
  if (r <= 1.0) return std::nullopt;
  const double v = (1.0 - 1.0 / r) * (1.0 - 2.0 / (r - 1.0));
  if (v <= 0.0) return std::nullopt;
  return v;
}

std::optional<double> algorithm_d_guarantee(double d) {
  if (d <= 1.0) return std::nullopt;
  const double v = 1.0 - 2.0 / (d - 1.0);
  if (v <= 0.0) return std::nullopt;
  return v;
}

std::optional<double> scheme_guarantee(const SchemeSpec& scheme, const Instance& inst) {
  if (scheme.wrap != 1.0) return std::nullopt;
  const double k = static_cast<double>(inst.k());
  switch (scheme.kind) {
    case SchemeKind::SimpleOcrs:
      if (inst.total() > k + kBudgetSlack) return std::nullopt;
      return ocrs_guarantee(inst.k());
    case SchemeKind::AlgorithmD:
      if (inst.total() > k - scheme.d + kBudgetSlack) return std::nullopt;
      return algorithm_d_guarantee(scheme.d);
    case SchemeKind::ScaledGreedy: {
      if (!(scheme.b < 1.0) || inst.total() > k + kBudgetSlack) return std::nullopt;
      const double v = scheme.b * (1.0 - chernoff_tail(scheme.b, inst.k()));
      if (v <= 0.0) return std::nullopt;
      return v;
    }
    case SchemeKind::NaiveGreedy:
    case SchemeKind::PartitionGreedy:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace ocrs
