#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <map>

#include "canopy/dynamics.hpp"
#include "canopy/edge_model.hpp"
#include "canopy/stats.hpp"

using namespace canopy;

namespace {

RootedMultiGraph single_vertex() {
  RootedMultiGraph g;
  g.n_vertices = 1;
  g.root = 0;
  return g;
}

}  // namespace

TEST_CASE("yule tree growth") {
  Rng rng = make_rng(3);
  auto t0 = sample_yule_tree(0.0, 2, rng);
  CHECK(t0.nodes.size() == 1);
  CHECK(t0.leaves.size() == 1);

  const int N = 4000;
  double sum = 0, sumsq = 0;
  for (int i = 0; i < N; ++i) {
    auto t = sample_yule_tree(3.0, 2, rng);
    // full b-ary: leaves = (b-1) * internal + 1
    std::size_t internal = t.nodes.size() - t.leaves.size();
    CHECK(t.leaves.size() == internal + 1);
    for (const auto& node : t.nodes)
      CHECK((node.children.empty() || node.children.size() == 2));
    double L = static_cast<double>(t.leaves.size());
    sum += L;
    sumsq += L * L;
  }
  double mean = sum / N;
  double se = std::sqrt((sumsq / N - mean * mean) / N);
  CHECK(std::abs(mean - std::exp(3.0)) < 3 * se);
}

TEST_CASE("tree edge model on the complete tree matches the leaf model") {
  // hand-build the complete depth-2 binary tree and compare edge count
  // distributions against the direct sampler
  Rng rng = make_rng(7);
  YuleTree tree;
  tree.b = 2;
  tree.t = 0;
  tree.nodes.resize(7);
  for (int p : {0, 1, 2}) {
    tree.nodes[static_cast<std::size_t>(p)].children = {2 * p + 1, 2 * p + 2};
    tree.nodes[static_cast<std::size_t>(2 * p + 1)].parent = p;
    tree.nodes[static_cast<std::size_t>(2 * p + 2)].parent = p;
  }
  tree.leaves = {3, 4, 5, 6};

  const int N = 40000;
  std::map<long long, std::uint64_t> ha, hb;
  for (int i = 0; i < N; ++i) {
    ++ha[sample_tree_edge_model(tree, 1.5, rng).multi_edge_count()];
    ++hb[sample_finite_edge_model(2, 1.5, 2, rng).multi_edge_count()];
  }
  CHECK(stats::chi_square_two_sample(ha, hb).p_value > 0.01);
}

TEST_CASE("star of a single vertex at lambda zero stays a single vertex") {
  Rng rng = make_rng(11);
  auto g = apply_star(single_vertex(), 0.0, 2, rng);
  CHECK(g.n_vertices == 1);
  CHECK(g.edges.empty());
}

TEST_CASE("one constant-clock round of mafia equals one star") {
  // with constant clocks of 1 and t in [1, 2), every vertex of the initial
  // graph splits exactly once and nothing splits twice, which is the
  // synchronous operation
  Rng rng = make_rng(13);
  const int N = 30000;
  std::map<long long, std::uint64_t> star_sizes, mafia_sizes;
  for (int i = 0; i < N; ++i) {
    auto base = sample_finite_edge_model(1, 2.0, 2, rng).root_component();
    ++star_sizes[static_cast<long long>(apply_star(base, 2.0, 2, rng).n_vertices)];
    auto m = run_mafia(base, 2.0, 1.5, 2, rng, MafiaMode::KeepAll, false,
                       ClockMode::Constant, 1.0);
    ++mafia_sizes[static_cast<long long>(m.graph.root_component_size())];
    CHECK(m.splits == base.n_vertices);
  }
  CHECK(stats::chi_square_two_sample(star_sizes, mafia_sizes).p_value > 0.01);
}

TEST_CASE("split count is determined by the vertex count in keep-all mode") {
  Rng rng = make_rng(17);
  for (int b : {2, 3}) {
    auto m = run_mafia(single_vertex(), 1.0, 4.0, b, rng, MafiaMode::KeepAll);
    CHECK(m.graph.n_vertices == 1 + m.splits * static_cast<std::uint64_t>(b - 1));
  }
}

TEST_CASE("mafia at t = 0 returns the initial graph") {
  Rng rng = make_rng(19);
  auto base = sample_finite_edge_model(2, 1.0, 2, rng);
  auto m = run_mafia(base, 1.0, 0.0, 2, rng, MafiaMode::KeepAll);
  CHECK(m.splits == 0);
  CHECK(m.graph.n_vertices == base.n_vertices);
  CHECK(m.graph.edges.size() == base.edges.size());
}

TEST_CASE("limit path length covers the truncation target") {
  CHECK(mafia_limit_path_length(1.0, 1e-6) == 68);
  // defining inequality at the returned n, and failure one step earlier
  for (double lambda : {0.5, 1.0, 2.0}) {
    int n = mafia_limit_path_length(lambda, 1e-6);
    double q = 1 - std::exp(-lambda) / 2;
    CHECK(std::pow(q, n) < 1e-6);
    CHECK(std::pow(q, n - 1) >= 1e-6);
  }
}

TEST_CASE("limit sample basics") {
  Rng rng = make_rng(23);
  auto zero = sample_mafia_limit(0.0, rng);
  CHECK(zero.graph.n_vertices == 1);
  CHECK(zero.graph.edges.empty());
  CHECK_FALSE(zero.boundary_touched);

  int flagged = 0;
  for (int i = 0; i < 2000; ++i) flagged += sample_mafia_limit(1.0, rng).boundary_touched;
  // boundary hits happen with probability below epsilon = 1e-6 per stub
  CHECK(flagged == 0);
}

TEST_CASE("limit law is stationary under one asynchronous round") {
  // feed sampled limit graphs back through the dynamics for one unit of time
  // and compare the size laws
  Rng rng = make_rng(29);
  const int N = 6000;
  std::map<long long, std::uint64_t> before, after;
  for (int i = 0; i < N; ++i) {
    auto s = sample_mafia_limit(1.0, rng);
    ++before[static_cast<long long>(s.graph.n_vertices)];
    auto m = run_mafia(s.graph, 1.0, 1.0, 2, rng, MafiaMode::RootComponent);
    ++after[static_cast<long long>(m.graph.n_vertices)];
  }
  CHECK(stats::chi_square_two_sample(before, after).p_value > 0.01);
}

TEST_CASE("double edge statistic on synthetic graphs") {
  RootedMultiGraph parallel;
  parallel.n_vertices = 2;
  parallel.edges = {{0, 1, 2}};
  RootedMultiGraph split;
  split.n_vertices = 3;
  split.edges = {{0, 1, 1}, {0, 2, 1}};
  RootedMultiGraph off;  // root degree 1, excluded from the conditioning
  off.n_vertices = 2;
  off.edges = {{0, 1, 1}};

  auto s = double_edge_stat({parallel, split, off, parallel});
  CHECK(s.conditioned == 3);
  CHECK(s.doubles == 2);
  CHECK(s.p == doctest::Approx(2.0 / 3).epsilon(1e-12));

  CHECK_THROWS_AS((void)double_edge_stat({off}), std::runtime_error);
}
