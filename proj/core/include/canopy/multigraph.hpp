#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "canopy/leaf_address.hpp"

namespace canopy {

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n), rank_(n, 0) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }
  std::vector<int> parent;
  std::vector<std::uint8_t> rank_;
};

/// Rooted multigraph: no self-loops, edge endpoints kept with u < v, edge list
/// sorted lexicographically (canonical form, stable across runs).
struct RootedMultiGraph {
  struct Edge {
    int u;
    int v;
    long long mult;
  };

  std::size_t n_vertices = 0;
  int root = 0;
  std::vector<Edge> edges;
  std::vector<LeafAddress> labels;  // optional; empty or size n_vertices

  long long multi_edge_count() const;
  std::vector<long long> multi_degrees() const;
  std::vector<long long> simple_degrees() const;
  long long isolated_count() const;  // vertices of simple degree 0

  std::vector<int> component_ids() const;
  bool connected() const;
  std::size_t root_component_size() const;
  std::size_t largest_component_size() const;

  /// Restriction to the root's component, vertices relabeled in increasing
  /// order of old id (labels carried over when present).
  RootedMultiGraph root_component() const;

  void sort_edges();
};

/// Accumulates multiplicities per unordered pair, then emits a canonical graph.
class EdgeAccumulator {
 public:
  void add(int u, int v, long long mult = 1);
  RootedMultiGraph build(std::size_t n_vertices, int root) &&;

 private:
  std::unordered_map<std::uint64_t, long long> mult_;
};

}  // namespace canopy
