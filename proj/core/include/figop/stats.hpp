#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace figop::stats {

// NaN entries are skipped by every reducer below.
double mean(std::span<const double> xs);
// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
double sample_std(std::span<const double> xs);
// Linear-interpolation quantile (Hyndman-Fan type 7), q in [0, 1].
double quantile(std::span<const double> xs, double q);
double median(std::span<const double> xs);
std::size_t finite_count(std::span<const double> xs);

struct BoxStats {
  std::size_t n = 0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double mean = 0.0;
};
BoxStats box_stats(std::span<const double> xs);

struct SignTest {
  int wins = 0;
  int losses = 0;
  int ties = 0;
  double p_value = 1.0;  // one-sided, P(X >= wins) under Binomial(wins + losses, 1/2)
};

// Paired one-sided sign test of "a is better than b". With lower_is_better a
// win is a[i] < b[i]. Pairs with a NaN on either side count as ties.
SignTest sign_test(std::span<const double> a, std::span<const double> b, bool lower_is_better);

// P(X >= k) for X ~ Binomial(n, 1/2).
double binomial_upper_tail(int n, int k);

}  // namespace figop::stats
