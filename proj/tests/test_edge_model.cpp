#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <map>

#include "canopy/edge_model.hpp"
#include "canopy/leaf_address.hpp"
#include "canopy/stats.hpp"

using namespace canopy;

TEST_CASE("lambda zero gives an edgeless graph") {
  Rng rng = make_rng(1);
  auto g = sample_finite_edge_model(3, 0.0, 2, rng);
  CHECK(g.n_vertices == 8);
  CHECK(g.edges.empty());
  CHECK(explore_infinite_cluster(0.0, 2, rng).graph.n_vertices == 1);
}

TEST_CASE("pair counts per class, b=2 n=2") {
  // height 1: one pair in each of the two sibling blocks; height 2: 2x2
  // cross pairs; 6 pairs total
  int n1 = 0, n2 = 0;
  for (int u = 0; u < 4; ++u)
    for (int v = u + 1; v < 4; ++v)
      (lca_height_index(u, v, 2) == 1 ? n1 : n2) += 1;
  CHECK(n1 == 2);
  CHECK(n2 == 4);
}

// brute-force reference: every pair drawn independently
static RootedMultiGraph naive_edge_model(int n, double lambda, int b, Rng& rng) {
  std::uint64_t leaves = pow_u64(b, n);
  EdgeAccumulator acc;
  for (std::uint64_t u = 0; u < leaves; ++u)
    for (std::uint64_t v = u + 1; v < leaves; ++v) {
      int k = lca_height_index(u, v, b);
      double mean = lambda * std::pow(static_cast<double>(b), 1 - 2 * k);
      long long m = std::poisson_distribution<long long>(mean)(rng);
      if (m > 0) acc.add(static_cast<int>(u), static_cast<int>(v), m);
    }
  return std::move(acc).build(leaves, 0);
}

TEST_CASE("aggregated sampling matches the per-pair law") {
  Rng rng = make_rng(42);
  const int N = 40000;
  // per-class edge totals and the multiplicity of one fixed sibling pair
  std::map<long long, std::uint64_t> h1a, h1b, paira, pairb;
  for (int i = 0; i < N; ++i) {
    auto ga = sample_finite_edge_model(3, 1.0, 2, rng);
    auto gb = naive_edge_model(3, 1.0, 2, rng);
    long long c1a = 0, c1b = 0, ma = 0, mb = 0;
    for (const auto& e : ga.edges) {
      if (lca_height_index(e.u, e.v, 2) == 1) c1a += e.mult;
      if (e.u == 0 && e.v == 1) ma = e.mult;
    }
    for (const auto& e : gb.edges) {
      if (lca_height_index(e.u, e.v, 2) == 1) c1b += e.mult;
      if (e.u == 0 && e.v == 1) mb = e.mult;
    }
    ++h1a[c1a];
    ++h1b[c1b];
    ++paira[ma];
    ++pairb[mb];
  }
  CHECK(stats::chi_square_two_sample(h1a, h1b).p_value > 0.01);
  CHECK(stats::chi_square_two_sample(paira, pairb).p_value > 0.01);
}

TEST_CASE("expected multi-degree of a fixed vertex is lambda (1 - b^-n)") {
  Rng rng = make_rng(5);
  const int N = 30000;
  double sum = 0, sumsq = 0;
  for (int i = 0; i < N; ++i) {
    auto g = sample_finite_edge_model(3, 1.0, 2, rng);
    double d = static_cast<double>(g.multi_degrees()[3]);
    sum += d;
    sumsq += d * d;
  }
  double mean = sum / N;
  double se = std::sqrt((sumsq / N - mean * mean) / N);
  CHECK(std::abs(mean - 0.875) < 3 * se);
}

TEST_CASE("canonical group volume reproduces the finite edge model") {
  Rng rng = make_rng(9);
  auto m = GeneratingMeasure::canonical(2);
  for (int h = 1; h <= 3; ++h)
    CHECK(m.pair_rate(h) == doctest::Approx(std::pow(2.0, 1 - 2 * h)).epsilon(1e-12));
  const int N = 30000;
  std::map<long long, std::uint64_t> ha, hb;
  for (int i = 0; i < N; ++i) {
    ++ha[sample_group_volume(m, 1.0, 3, rng).multi_edge_count()];
    ++hb[sample_finite_edge_model(3, 1.0, 2, rng).multi_edge_count()];
  }
  CHECK(stats::chi_square_two_sample(ha, hb).p_value > 0.01);
}

TEST_CASE("power measures need alpha above b") {
  CHECK_THROWS_AS((void)GeneratingMeasure::power(2.0, 2), std::invalid_argument);
  CHECK_THROWS_AS((void)GeneratingMeasure::power(3.0, 3), std::invalid_argument);
  auto m = GeneratingMeasure::power(3.0, 2);
  CHECK(m.pair_rate(2) == doctest::Approx(2.0 / 9).epsilon(1e-12));
}

TEST_CASE("isolated root frequency is e^-lambda") {
  Rng rng = make_rng(17);
  for (double lambda : {0.5, 1.0, 2.0}) {
    const int N = 20000;
    int isolated = 0;
    for (int i = 0; i < N; ++i)
      isolated += explore_infinite_cluster(lambda, 2, rng).graph.n_vertices == 1;
    double p = static_cast<double>(isolated) / N;
    double target = std::exp(-lambda);
    double se = std::sqrt(target * (1 - target) / N);
    CHECK(std::abs(p - target) < 3 * se);
  }
}

TEST_CASE("exploration escape height has geometric tail") {
  Rng rng = make_rng(23);
  const int N = 20000;
  std::vector<int> levels;
  for (int i = 0; i < N; ++i) levels.push_back(explore_infinite_cluster(1.0, 2, rng).escaped_level);
  for (int n = 1; n <= 8; ++n) {
    int beyond = 0;
    for (int lv : levels) beyond += lv > n;
    double p = static_cast<double>(beyond) / N;
    double bound = std::pow(1 - std::exp(-1.0) / 2, n);
    CHECK(p <= bound + 3 * std::sqrt(bound * (1 - bound) / N));
  }
}

TEST_CASE("larger trees have larger root components under common seeds") {
  const int N = 4000;
  double small = 0, large = 0;
  for (int i = 0; i < N; ++i) {
    Rng r1 = make_rng(derive_seed(77, static_cast<std::uint64_t>(i)));
    Rng r2 = make_rng(derive_seed(77, static_cast<std::uint64_t>(i)));
    small += static_cast<double>(sample_finite_edge_model(4, 2.0, 2, r1).root_component_size());
    large += static_cast<double>(sample_finite_edge_model(6, 2.0, 2, r2).root_component_size());
  }
  CHECK(small / N < large / N);
}

TEST_CASE("subcritical exploration never hits the vertex budget") {
  Rng rng = make_rng(31);
  int truncated = 0;
  for (int i = 0; i < 2000; ++i) truncated += explore_infinite_cluster(0.5, 2, rng).truncated;
  CHECK(truncated == 0);
}

TEST_CASE("supercritical exploration reports truncation") {
  Rng rng = make_rng(33);
  int truncated = 0;
  for (int i = 0; i < 50; ++i) truncated += explore_infinite_cluster(6.0, 2, rng, 2000).truncated;
  CHECK(truncated >= 45);  // escape probability is high at lambda = 6
}

TEST_CASE("root degree sampler marginals") {
  Rng rng = make_rng(37);
  const int N = 30000;
  double multi = 0, simple = 0;
  for (int i = 0; i < N; ++i) {
    auto d = sample_root_degrees(2.0, 2, rng);
    multi += static_cast<double>(d.multi);
    simple += static_cast<double>(d.simple);
  }
  CHECK(multi / N == doctest::Approx(2.0).epsilon(0.03));
  CHECK(simple / N < multi / N);
}
