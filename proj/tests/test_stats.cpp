#include <doctest.h>

#include <stdexcept>

#include <random>

#include "canopy/stats.hpp"

using namespace canopy::stats;

TEST_CASE("chi squared survival function reference points") {
  CHECK(chi_squared_sf(3.841458821, 1) == doctest::Approx(0.05).epsilon(1e-6));
  CHECK(chi_squared_sf(0.0, 5) == 1.0);
  CHECK(chi_squared_sf(100.0, 1) < 1e-20);
}

TEST_CASE("two-sample test accepts identical data and rejects shifted data") {
  std::mt19937_64 rng(7);
  std::poisson_distribution<long long> pa(3.0), pb(3.6);
  std::map<long long, std::uint64_t> a, b, c;
  for (int i = 0; i < 50000; ++i) {
    ++a[pa(rng)];
    ++b[pa(rng)];
    ++c[pb(rng)];
  }
  CHECK(chi_square_two_sample(a, b).p_value > 0.01);
  CHECK(chi_square_two_sample(a, c).p_value < 1e-6);
}

TEST_CASE("goodness of fit against Poisson probabilities") {
  std::mt19937_64 rng(11);
  std::poisson_distribution<int> po(2.0);
  std::vector<std::uint64_t> counts(30, 0);
  for (int i = 0; i < 50000; ++i) ++counts[static_cast<std::size_t>(po(rng))];
  std::vector<double> probs;
  double p = std::exp(-2.0);
  for (int k = 0; k < 30; ++k) {
    probs.push_back(p);
    p *= 2.0 / (k + 1);
  }
  CHECK(chi_square_gof(counts, probs).p_value > 0.01);
}

TEST_CASE("pooling refuses degenerate inputs") {
  std::map<long long, std::uint64_t> a{{0, 100}}, b{{0, 100}};
  CHECK_THROWS(chi_square_two_sample(a, b));
}

TEST_CASE("wilson interval brackets the point estimate") {
  auto w = wilson(450, 1000);
  CHECK(w.p == doctest::Approx(0.45));
  CHECK(w.lo < 0.45);
  CHECK(w.hi > 0.45);
  CHECK(w.hi - w.lo < 0.07);
  auto edge = wilson(0, 10);
  CHECK(edge.lo == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(edge.hi > 0.0);
}

TEST_CASE("mean and standard error") {
  auto ms = mean_se({1, 2, 3, 4});
  CHECK(ms.mean == doctest::Approx(2.5));
  CHECK(ms.se == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
}

TEST_CASE("monotone violation measured in combined SEs") {
  CHECK(max_monotone_violation_se({0.1, 0.2, 0.3}, {0.01, 0.01, 0.01}) == 0.0);
  double v = max_monotone_violation_se({0.3, 0.2}, {0.02, 0.02});
  CHECK(v == doctest::Approx(0.1 / std::sqrt(0.0008)));
}
