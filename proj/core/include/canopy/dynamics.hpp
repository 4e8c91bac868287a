#pragma once

#include <cstdint>
#include <vector>

#include "canopy/multigraph.hpp"
#include "canopy/rng.hpp"

namespace canopy {

// Random b-ary tree grown by rate-1 exponential clocks on the leaves up to
// age t. Node 0 is the root; internal nodes have exactly b children.
struct YuleTree {
  struct Node {
    double birth = 0;
    int parent = -1;
    std::vector<int> children;
  };
  int b = 2;
  double t = 0;
  std::vector<Node> nodes;
  std::vector<int> leaves;  // node ids, discovery order
};

YuleTree sample_yule_tree(double t, int b, Rng& rng);

// Poisson edge model on the leaves of an arbitrary full b-ary tree: each
// unordered leaf pair {x,y} gets Po(lambda b^{1-d(x,y)}) edges, d = tree
// distance. Sampled per internal node and child pair: since every full b-ary
// subtree satisfies sum_leaves b^{-depth} = 1, the total rate for a child
// pair is lambda/b, and placement is a uniform descent. Graph vertex i is
// tree.leaves[i]. On the complete depth-n tree this reproduces
// sample_finite_edge_model.
RootedMultiGraph sample_tree_edge_model(const YuleTree& tree, double lambda, Rng& rng);

// Synchronous splitting: every vertex of G becomes b offspring, Po(lambda/b)
// new edges per offspring pair, each old edge endpoint reassigned uniformly
// among the offspring of its old endpoint, root reassigned uniformly; the
// result is restricted to the root's component. G must be connected.
RootedMultiGraph apply_star(const RootedMultiGraph& g, double lambda, int b, Rng& rng);

enum class MafiaMode { KeepAll, RootComponent };
enum class ClockMode { Exponential, Constant };

struct MafiaResult {
  RootedMultiGraph graph;
  std::uint64_t splits = 0;
};

// Asynchronous splitting: each vertex carries its own split time (Exp(1)
// after birth, or a fixed constant for the degenerate consistency check);
// events fire in time order up to t, each performing the per-vertex part of
// the star operation. With boost set, the initial root's own split uses pair
// rate lambda instead of lambda/b (it fires at most once). RootComponent
// mode discards non-root components after every split.
MafiaResult run_mafia(const RootedMultiGraph& initial, double lambda, double t, int b,
                      Rng& rng, MafiaMode mode, bool boost = false,
                      ClockMode clock = ClockMode::Exponential,
                      double clock_constant = 1.0);

// Path length n making the truncation error (1 - e^-lambda / b)^n < epsilon.
int mafia_limit_path_length(double lambda, double epsilon, int b = 2);

struct MafiaLimitSample {
  RootedMultiGraph graph;       // component of the path end v0, root 0
  bool boundary_touched = false;
  int path_length = 0;
};

// Stationary law of the asynchronous process, binary splitting only: a path
// v0 v1 ... v_n with Exp(1) edge labels s_i, an independent age-(s_1+...+s_i)
// Yule tree hung on each v_i, and Po(lambda 2^{1-d(x,y)}) edges between
// leaves. Trees are realized lazily (they are far too big to build), and the
// per-leaf total edge rate is exactly lambda because every leaf sees total
// weight sum 2^{1-d} = 1; targets are drawn by a non-backtracking walk.
// Stubs walking past v_n are dropped and flag the sample.
MafiaLimitSample sample_mafia_limit(double lambda, Rng& rng, double epsilon = 1e-6);

struct DoubleEdgeStat {
  double p = 0;
  double se = 0;
  std::uint64_t conditioned = 0;  // samples with root multi-degree exactly 2
  std::uint64_t doubles = 0;
};

// P(the two root edges are parallel | root multi-degree = 2), estimated over
// a list of sampled graphs. Throws if no sample satisfies the condition.
DoubleEdgeStat double_edge_stat(const std::vector<RootedMultiGraph>& samples);

}  // namespace canopy
