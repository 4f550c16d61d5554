#include "figop/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "figop/errors.hpp"

namespace figop::stats {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> finite_sorted(std::span<const double> xs) {
  std::vector<double> v;
  for (double x : xs) {
    if (!std::isnan(x)) v.push_back(x);
  }
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

std::size_t finite_count(std::span<const double> xs) {
  return static_cast<std::size_t>(std::count_if(xs.begin(), xs.end(), [](double x) { return !std::isnan(x); }));
}

double mean(std::span<const double> xs) {
  double sum = 0.0;
  std::size_t n = 0;
  for (double x : xs) {
    if (std::isnan(x)) continue;
    sum += x;
    ++n;
  }
  return n == 0 ? kNaN : sum / static_cast<double>(n);
}

double sample_std(std::span<const double> xs) {
  const std::size_t n = finite_count(xs);
  if (n < 2) return n == 0 ? kNaN : 0.0;
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) {
    if (!std::isnan(x)) ss += (x - m) * (x - m);
  }
  return std::sqrt(ss / static_cast<double>(n - 1));
}

double quantile(std::span<const double> xs, double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw ParameterError("quantile level must lie in [0, 1]");
  const auto v = finite_sorted(xs);
  if (v.empty()) return kNaN;
  const double h = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

double median(std::span<const double> xs) { return quantile(xs, 0.5); }

BoxStats box_stats(std::span<const double> xs) {
  return {finite_count(xs), quantile(xs, 0.25), quantile(xs, 0.5), quantile(xs, 0.75), mean(xs)};
}

double binomial_upper_tail(int n, int k) {
  if (n < 0) throw ParameterError("binomial n must be >= 0");
  if (k <= 0) return 1.0;
  if (k > n) return 0.0;
  // Sum C(n, i) / 2^n in log space to stay finite for large n.
  double total = 0.0;
  for (int i = k; i <= n; ++i) {
    const double log_c = std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0);
    total += std::exp(log_c - n * std::log(2.0));
  }
  return std::min(1.0, total);
}

SignTest sign_test(std::span<const double> a, std::span<const double> b, bool lower_is_better) {
  if (a.size() != b.size()) throw ParameterError("sign test needs paired samples of equal length");
  SignTest t;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::isnan(a[i]) || std::isnan(b[i]) || a[i] == b[i]) {
      ++t.ties;
    } else if ((a[i] < b[i]) == lower_is_better) {
      ++t.wins;
    } else {
      ++t.losses;
    }
  }
  t.p_value = binomial_upper_tail(t.wins + t.losses, t.wins);
  return t;
}

}  // namespace figop::stats
