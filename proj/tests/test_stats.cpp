#include <cmath>
#include <vector>

#include "doctest.h"
#include "figop/stats.hpp"

using namespace figop::stats;

TEST_CASE("moments skip NaN") {
  const std::vector<double> xs{1.0, 2.0, NAN, 4.0};
  CHECK(mean(xs) == doctest::Approx(7.0 / 3.0));
  // sqrt(((1-7/3)^2 + (2-7/3)^2 + (4-7/3)^2) / 2)
  CHECK(sample_std(xs) == doctest::Approx(std::sqrt((16.0 / 9 + 1.0 / 9 + 25.0 / 9) / 2.0)));
  CHECK(sample_std(std::vector<double>{5.0}) == 0.0);
  CHECK(finite_count(xs) == 3u);
  CHECK(std::isnan(mean(std::vector<double>{})));
}

TEST_CASE("type 7 quantiles") {
  const std::vector<double> xs{4.0, 1.0, 3.0, 2.0};
  CHECK(quantile(xs, 0.0) == 1.0);
  CHECK(quantile(xs, 1.0) == 4.0);
  CHECK(quantile(xs, 0.25) == doctest::Approx(1.75));
  CHECK(median(xs) == doctest::Approx(2.5));
  CHECK(quantile(xs, 0.75) == doctest::Approx(3.25));
  const auto b = box_stats(xs);
  CHECK(b.n == 4u);
  CHECK(b.q1 == doctest::Approx(1.75));
  CHECK(b.q3 == doctest::Approx(3.25));
  CHECK(b.mean == doctest::Approx(2.5));
}

TEST_CASE("sign test") {
  const std::vector<double> a{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  const std::vector<double> b{2, 3, 4, 5, 6, 7, 8, 9, 10, 10};
  const auto lower = sign_test(a, b, true);
  CHECK(lower.wins == 9);
  CHECK(lower.losses == 0);
  CHECK(lower.ties == 1);
  CHECK(lower.p_value == doctest::Approx(1.0 / 512.0));
  const auto higher = sign_test(a, b, false);
  CHECK(higher.wins == 0);
  CHECK(higher.p_value == doctest::Approx(1.0));

  const std::vector<double> c{1.0, NAN, 3.0};
  const std::vector<double> d{2.0, 1.0, 1.0};
  const auto mixed = sign_test(c, d, true);
  CHECK(mixed.wins == 1);
  CHECK(mixed.losses == 1);
  CHECK(mixed.ties == 1);
  CHECK(mixed.p_value == doctest::Approx(0.75));
}

TEST_CASE("binomial tail by direct summation") {
  for (int n = 0; n <= 20; ++n) {
    for (int k = 0; k <= n; ++k) {
      double sum = 0.0;
      for (int j = k; j <= n; ++j) {
        double c = 1.0;
        for (int i = 0; i < j; ++i) c = c * (n - i) / (i + 1);
        sum += c;
      }
      CHECK(binomial_upper_tail(n, k) == doctest::Approx(sum / std::pow(2.0, n)).epsilon(1e-10));
    }
  }
}
