#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

#include <Eigen/Core>

#include "ocrs/errors.hpp"

namespace ocrs {

/// Bin(n, p).
struct BinomialSpec {
  std::int64_t n = 0;
  double p = 0.5;
};

void check_binomial(const BinomialSpec& spec);

/// log P(X = m); -infinity outside the support.
double binom_log_pmf(const BinomialSpec& spec, std::int64_t m);
double binom_pmf(const BinomialSpec& spec, std::int64_t m);

/// P(X <= m). Sums the tail that does not contain the mode, outward from m,
/// and complements when that tail is the upper one.
double binom_cdf(const BinomialSpec& spec, std::int64_t m);

/// P(X >= m), so that binom_cdf(s, m) + binom_sf(s, m + 1) == 1.
double binom_sf(const BinomialSpec& spec, std::int64_t m);

/// Every pmf term P(X = 0..n), one exponentiation per term from a log-gamma table.
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> binom_pmf_vector(const BinomialSpec& spec) {
  check_binomial(spec);
  using std::exp;
  using std::lgamma;
  using std::log;
  using std::log1p;
  const Eigen::Index n = static_cast<Eigen::Index>(spec.n);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out =
      Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(n + 1);
  if (spec.p <= 0.0) {
    out[0] = Scalar(1);
    return out;
  }
  if (spec.p >= 1.0) {
    out[n] = Scalar(1);
    return out;
  }
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> lfact(n + 1);
  for (Eigen::Index j = 0; j <= n; ++j) lfact[j] = lgamma(Scalar(j) + Scalar(1));
  const Scalar lp = log(Scalar(spec.p));
  const Scalar lq = log1p(-Scalar(spec.p));
  for (Eigen::Index m = 0; m <= n; ++m)
    out[m] = exp(lfact[n] - lfact[m] - lfact[n - m] + Scalar(m) * lp + Scalar(n - m) * lq);
  return out;
}

}  // namespace ocrs
