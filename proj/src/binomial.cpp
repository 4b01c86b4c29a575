#include "ocrs/binomial.hpp"

#include <string>

namespace ocrs {

namespace {

// Relative size below which the remaining geometric tail is negligible.
constexpr double kTailCutoff = 1e-18;

// Sum of pmf terms from `from` stepping by `dir` until the support ends or
// the terms become negligible. Terms must be decreasing in the step direction.
double tail_sum(const BinomialSpec& s, std::int64_t from, int dir) {
  double sum = 0.0;
  for (std::int64_t m = from; m >= 0 && m <= s.n; m += dir) {
    const double term = binom_pmf(s, m);
    sum += term;
    if (term <= kTailCutoff * sum) break;
  }
  return sum;
}

std::int64_t mode_of(const BinomialSpec& s) {
  auto mode = static_cast<std::int64_t>(std::floor(static_cast<double>(s.n + 1) * s.p));
  return mode > s.n ? s.n : mode;
}

}  // namespace

void check_binomial(const BinomialSpec& spec) {
  if (spec.n < 0) throw BadParameters("binomial n must be >= 0, got " + std::to_string(spec.n));
  if (!(spec.p >= 0.0 && spec.p <= 1.0))
    throw BadParameters("binomial p must lie in [0,1], got " + std::to_string(spec.p));
}

double binom_log_pmf(const BinomialSpec& s, std::int64_t m) {
  check_binomial(s);
  constexpr double ninf = -std::numeric_limits<double>::infinity();
  if (m < 0 || m > s.n) return ninf;
  if (s.p <= 0.0) return m == 0 ? 0.0 : ninf;
  if (s.p >= 1.0) return m == s.n ? 0.0 : ninf;
  const auto n = static_cast<double>(s.n);
  const auto k = static_cast<double>(m);
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) +
         k * std::log(s.p) + (n - k) * std::log1p(-s.p);
}

double binom_pmf(const BinomialSpec& s, std::int64_t m) { return std::exp(binom_log_pmf(s, m)); }

double binom_cdf(const BinomialSpec& s, std::int64_t m) {
  check_binomial(s);
  if (m < 0) return 0.0;
  if (m >= s.n) return 1.0;
  if (m < mode_of(s)) return tail_sum(s, m, -1);
  return 1.0 - tail_sum(s, m + 1, +1);
}

double binom_sf(const BinomialSpec& s, std::int64_t m) {
  check_binomial(s);
  if (m <= 0) return 1.0;
  if (m > s.n) return 0.0;
  if (m > mode_of(s)) return tail_sum(s, m, +1);
  return 1.0 - tail_sum(s, m - 1, -1);
}

}  // namespace ocrs
