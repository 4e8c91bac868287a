#include "canopy/multigraph.hpp"

#include <algorithm>
#include <stdexcept>

namespace canopy {

long long RootedMultiGraph::multi_edge_count() const {
  long long total = 0;
  for (const auto& e : edges) total += e.mult;
  return total;
}

std::vector<long long> RootedMultiGraph::multi_degrees() const {
  std::vector<long long> deg(n_vertices, 0);
  for (const auto& e : edges) {
    deg[e.u] += e.mult;
    deg[e.v] += e.mult;
  }
  return deg;
}

std::vector<long long> RootedMultiGraph::simple_degrees() const {
  std::vector<long long> deg(n_vertices, 0);
  for (const auto& e : edges) {
    ++deg[e.u];
    ++deg[e.v];
  }
  return deg;
}

long long RootedMultiGraph::isolated_count() const {
  auto deg = simple_degrees();
  return std::count(deg.begin(), deg.end(), 0LL);
}

std::vector<int> RootedMultiGraph::component_ids() const {
  DisjointSets ds(n_vertices);
  for (const auto& e : edges) ds.unite(e.u, e.v);
  std::vector<int> ids(n_vertices);
  for (std::size_t i = 0; i < n_vertices; ++i) ids[i] = ds.find(static_cast<int>(i));
  return ids;
}

bool RootedMultiGraph::connected() const {
  if (n_vertices <= 1) return true;
  DisjointSets ds(n_vertices);
  std::size_t merges = 0;
  for (const auto& e : edges) merges += ds.unite(e.u, e.v) ? 1 : 0;
  return merges + 1 == n_vertices;
}

std::size_t RootedMultiGraph::root_component_size() const {
  auto ids = component_ids();
  if (ids.empty()) return 0;
  int rid = ids[root];
  return static_cast<std::size_t>(std::count(ids.begin(), ids.end(), rid));
}

std::size_t RootedMultiGraph::largest_component_size() const {
  auto ids = component_ids();
  std::vector<std::size_t> count(n_vertices, 0);
  std::size_t best = 0;
  for (int id : ids) best = std::max(best, ++count[id]);
  return best;
}

RootedMultiGraph RootedMultiGraph::root_component() const {
  auto ids = component_ids();
  int rid = ids.empty() ? 0 : ids[root];
  std::vector<int> remap(n_vertices, -1);
  RootedMultiGraph out;
  for (std::size_t i = 0; i < n_vertices; ++i) {
    if (ids[i] == rid) {
      remap[i] = static_cast<int>(out.n_vertices++);
      if (!labels.empty()) out.labels.push_back(labels[i]);
    }
  }
  out.root = remap[root];
  for (const auto& e : edges) {
    if (remap[e.u] >= 0 && remap[e.v] >= 0) {
      int u = remap[e.u], v = remap[e.v];
      if (u > v) std::swap(u, v);
      out.edges.push_back({u, v, e.mult});
    }
  }
  out.sort_edges();
  return out;
}

void RootedMultiGraph::sort_edges() {
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
}

void EdgeAccumulator::add(int u, int v, long long mult) {
  if (u == v) throw std::invalid_argument("self-loops are not allowed");
  if (u > v) std::swap(u, v);
  mult_[(static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v)] += mult;
}

RootedMultiGraph EdgeAccumulator::build(std::size_t n_vertices, int root) && {
  RootedMultiGraph g;
  g.n_vertices = n_vertices;
  g.root = root;
  g.edges.reserve(mult_.size());
  for (const auto& [key, m] : mult_) {
    g.edges.push_back({static_cast<int>(key >> 32), static_cast<int>(key & 0xffffffffu), m});
  }
  g.sort_edges();
  return g;
}

}  // namespace canopy
