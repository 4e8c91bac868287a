#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <map>

#include "canopy/particle_model.hpp"
#include "canopy/stats.hpp"
#include "canopy/walk_constants.hpp"

using namespace canopy;

TEST_CASE("max height of the walk follows (b-1)/(b^h - 1)") {
  // run the height component of the walk directly: from an internal vertex
  // there are b children and 1 parent, all equally likely, and the apex
  // forces descent; record the highest vertex visited before returning
  Rng rng = make_rng(3);
  const int n = 6, b = 2, N = 60000;
  std::vector<std::uint64_t> height_counts(static_cast<std::size_t>(n) + 1, 0);
  for (int rep = 0; rep < N; ++rep) {
    int height = 1;  // first step is forced upward from the leaf
    int max_height = 1;
    std::uniform_int_distribution<int> dir(0, b);
    while (height > 0) {
      if (height == n || dir(rng) != b) {
        --height;
      } else {
        ++height;
        if (height > max_height) max_height = height;
      }
    }
    ++height_counts[static_cast<std::size_t>(max_height)];
  }
  for (int h = 2; h <= 4; ++h) {
    std::uint64_t at_least = 0;
    for (int j = h; j <= n; ++j) at_least += height_counts[static_cast<std::size_t>(j)];
    double p = static_cast<double>(at_least) / N;
    double target = static_cast<double>(b - 1) / (std::pow(b, h) - 1);
    double se = std::sqrt(target * (1 - target) / N);
    CHECK(std::abs(p - target) < 4 * se);
  }
}

TEST_CASE("return probability to the start leaf equals zeta_1 on the deep tree") {
  // the endpoint is uniform under the height-H ancestor, so the start leaf
  // carries the same mass as any fixed sibling
  Rng rng = make_rng(7);
  auto est = estimate_hit_prob(0, 0, 16, 2, 200000, rng, WalkMethod::Exact);
  CHECK(std::abs(est.p - walk::zeta(1, 2).mid()) < 4 * est.se);
}

TEST_CASE("naive and exact walks share the same endpoint law") {
  Rng rng = make_rng(11);
  const int N = 60000;
  for (int n : {3, 4}) {
    std::map<long long, std::uint64_t> naive, exact;
    for (int i = 0; i < N; ++i) {
      ++naive[static_cast<long long>(sample_walk_endpoint(5 % pow_u64(2, n), n, 2, rng,
                                                          WalkMethod::Naive))];
      ++exact[static_cast<long long>(sample_walk_endpoint(5 % pow_u64(2, n), n, 2, rng,
                                                          WalkMethod::Exact))];
    }
    CHECK(stats::chi_square_two_sample(naive, exact).p_value > 0.005);
  }
}

TEST_CASE("particle graph basics") {
  Rng rng = make_rng(13);
  auto empty = sample_particle_graph(3, 0.0, 2, rng);
  CHECK(empty.n_vertices == 8);
  CHECK(empty.edges.empty());

  // every leaf releases Po(lambda/2) particles and each surviving particle
  // contributes one multi-edge; survivors are those not returning home
  const int N = 20000;
  double edges = 0;
  for (int i = 0; i < N; ++i)
    edges += static_cast<double>(sample_particle_graph(2, 1.5, 2, rng).multi_edge_count());
  // per leaf 0.75 particles; on the depth-2 tree the return probability is
  // P(H=1)/2 + P(H=2)/4 = (2/3)/2 + (1/3)/4 = 5/12, so 7/12 survive
  double expect = 4 * 0.75 * (7.0 / 12);
  CHECK(edges / N == doctest::Approx(expect).epsilon(0.05));
}

TEST_CASE("sibling hit probability matches the zeta bracket") {
  Rng rng = make_rng(17);
  for (int k = 1; k <= 3; ++k) {
    std::uint64_t y = pow_u64(2, k - 1);  // lca height exactly k with leaf 0
    auto est = estimate_hit_prob(0, y, 14, 2, 400000, rng, WalkMethod::Exact);
    auto z = walk::zeta(k, 2);
    // the depth-14 correction is below 1e-4 at these k
    CHECK(est.p > z.lo - 4 * est.se - 1e-4);
    CHECK(est.p < z.hi + 4 * est.se + 1e-4);
  }
}

TEST_CASE("zeta obeys the two-sided b^{1-2k} envelope") {
  for (int b : {2, 3}) {
    double c = 1.0, C = 0.0;
    for (int k = 1; k <= 12; ++k) {
      double scale = std::pow(static_cast<double>(b), 1 - 2 * k);
      auto z = walk::zeta(k, b);
      c = std::min(c, z.lo / scale);
      C = std::max(C, z.hi / scale);
    }
    CHECK(c > 0.2);
    CHECK(C < 1.0);
    // the ratio is monotone, so the envelope is tight at the ends
    auto z1 = walk::zeta(1, b);
    auto bounds = walk::zeta_bounds(1, b);
    CHECK(z1.lo >= bounds.first);
    CHECK(z1.hi <= bounds.second);
  }
}

TEST_CASE("fixed-pair hit probability shrinks as the tree deepens") {
  // the height cap piles leftover mass on the apex, which favors near pairs
  Rng rng = make_rng(23);
  auto shallow = estimate_hit_prob(0, 1, 3, 2, 1000000, rng);
  auto deep = estimate_hit_prob(0, 1, 8, 2, 1000000, rng);
  CHECK(shallow.p > deep.p + 3 * std::sqrt(shallow.se * shallow.se + deep.se * deep.se));
}
