#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "canopy/experiments.hpp"

using namespace canopy;

TEST_CASE("model names round-trip") {
  for (Model m : {Model::Edge, Model::Particle, Model::Mafia})
    CHECK(parse_model(model_name(m)) == m);
  CHECK_THROWS_AS((void)parse_model("nope"), std::invalid_argument);
}

TEST_CASE("chi estimate at lambda zero is exactly one") {
  auto chi = estimate_chi(0.0, 2, 2000, 5, 2);
  CHECK_FALSE(chi.refused);
  CHECK(chi.mean == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(chi.n_used == 2000);
  CHECK(chi.n_truncated == 0);
}

TEST_CASE("chi estimate refuses when exploration is supercritical") {
  // deep in the supercritical phase almost every exploration hits the cap
  auto chi = estimate_chi(6.0, 2, 200, 5, 2, 2000);
  CHECK(chi.refused);
}

TEST_CASE("invariance test accepts the null and rejects a shifted lambda") {
  auto null = invariance_test(3, 1.0, 2, 40000, 11, 4);
  CHECK(null.p_value > 0.01);
  auto shifted = invariance_test(3, 1.0, 2, 40000, 11, 4, 1.5);
  CHECK(shifted.p_value < 0.01);
}

TEST_CASE("invariance at lambda zero is a point mass on both sides") {
  auto r = invariance_test(3, 0.0, 2, 500, 11, 2);
  CHECK(r.p_value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sweep at lambda zero has no connectivity and always an isolated vertex") {
  auto pts = sweep_connectivity(Model::Edge, 3, {0.0}, 2, 500, 7, 2);
  REQUIRE(pts.size() == 1);
  CHECK(pts[0].p_connected == 0);
  CHECK(pts[0].p_no_isolated == 0);

  auto records = sweep_records(Model::Edge, 3, {0.0, 1.0}, 2, 10, 7, 2);
  CHECK(records.size() == 20);
  // replicate numbering is global across the grid so reruns are reproducible
  CHECK(records[0].replicate == 0);
  CHECK(records[10].replicate == 10);
  CHECK(records[10].seed == derive_seed(7, 10));
}

TEST_CASE("threshold bisection validates its bracket") {
  CHECK_THROWS_AS((void)bisect_threshold(Model::Edge, 3, 2, ThresholdEvent::Connected, 0.1,
                                         0.2, 0.5, 200, 3, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)bisect_threshold(Model::Edge, 3, 2, ThresholdEvent::Connected, 1.0,
                                         8.0, 0.5, 0, 3, 2),
                  std::invalid_argument);
}

TEST_CASE("threshold bisection brackets the crossing") {
  auto est = bisect_threshold(Model::Edge, 4, 2, ThresholdEvent::Connected, 0.5, 12.0, 0.5,
                              400, 13, 4);
  CHECK(est.ci_lo < est.lambda_star);
  CHECK(est.lambda_star < est.ci_hi);
  // crossing must sit inside the original bracket with room to spare
  CHECK(est.lambda_star > 0.5);
  CHECK(est.lambda_star < 12.0);
  CHECK(est.max_monotone_violation_se < 3.0);
}

TEST_CASE("linkage certificate extremes") {
  auto tree = CertTree::complete(2, 2);
  RootedMultiGraph complete;
  complete.n_vertices = 4;
  for (int u = 0; u < 4; ++u)
    for (int v = u + 1; v < 4; ++v) complete.edges.push_back({u, v, 1});
  auto full = linkage_certificate(complete, tree, 2);
  CHECK(full.certified);
  CHECK(full.connected);

  RootedMultiGraph empty;
  empty.n_vertices = 4;
  auto none = linkage_certificate(empty, tree, 2);
  CHECK_FALSE(none.certified);
  CHECK_FALSE(none.connected);
}

TEST_CASE("certified graphs are connected") {
  Rng rng = make_rng(17);
  for (int i = 0; i < 400; ++i) {
    int n = 3;
    auto g = sample_finite_edge_model(n, 2.5, 2, rng);
    auto res = linkage_certificate(g, CertTree::complete(n, 2), n);
    if (res.certified) CHECK(g.connected());
    CHECK(res.connected == g.connected());
  }
}

TEST_CASE("isolated vertex bound") {
  auto r = isolated_bound_check(100, 1.0, 0.01, 0.001);
  CHECK(r.bound == doctest::Approx(2.0 / 102).epsilon(1e-12));
  CHECK(r.within);
  CHECK_FALSE(isolated_bound_check(100, 0.5, 0.9, 0.001).within);
  CHECK_THROWS_AS((void)isolated_bound_check(100, 0.0, 0.5, 0.01), std::invalid_argument);
  CHECK_THROWS_AS((void)isolated_bound_check(100, 1.5, 0.5, 0.01), std::invalid_argument);
}

TEST_CASE("percolation sweep at lambda zero gives singleton clusters") {
  auto pts = percolation_sweep(GeneratingMeasure::canonical(2), 0.0, {2, 3}, 50, 19, 2);
  REQUIRE(pts.size() == 2);
  for (const auto& p : pts) {
    CHECK(p.mean_fraction == doctest::Approx(std::pow(2.0, -p.k)).epsilon(1e-12));
    CHECK(p.se == 0);
  }
}

TEST_CASE("degree check agrees with the series") {
  auto rows = degree_check({0.5, 2.0}, 2, 40000, 23, 4);
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) {
    CHECK(std::abs(r.mc_simple - r.series) < 4 * r.mc_simple_se);
    CHECK(std::abs(r.mc_multi - r.lambda) < 4 * r.mc_multi_se);
    CHECK(r.ratio == doctest::Approx(r.series / std::sqrt(r.lambda)).epsilon(1e-12));
  }
}

TEST_CASE("parallel replicate results do not depend on the worker count") {
  auto a = sweep_connectivity(Model::Particle, 3, {1.0, 3.0}, 2, 400, 29, 1);
  auto b2 = sweep_connectivity(Model::Particle, 3, {1.0, 3.0}, 2, 400, 29, 4);
  REQUIRE(a.size() == b2.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].p_connected == b2[i].p_connected);
    CHECK(a[i].p_no_isolated == b2[i].p_no_isolated);
  }
}
