#include "canopy/dynamics.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>
#include <unordered_map>

namespace canopy {

YuleTree sample_yule_tree(double t, int b, Rng& rng) {
  if (t < 0) throw std::invalid_argument("t must be nonnegative");
  if (b < 2) throw std::invalid_argument("b must be >= 2");
  YuleTree tree;
  tree.b = b;
  tree.t = t;
  tree.nodes.push_back({0.0, -1, {}});
  std::exponential_distribution<double> exp1(1.0);
  using Ev = std::pair<double, int>;
  std::priority_queue<Ev, std::vector<Ev>, std::greater<>> rings;
  rings.push({exp1(rng), 0});
  while (!rings.empty() && rings.top().first <= t) {
    auto [when, node] = rings.top();
    rings.pop();
    for (int c = 0; c < b; ++c) {
      int id = static_cast<int>(tree.nodes.size());
      tree.nodes.push_back({when, node, {}});
      tree.nodes[node].children.push_back(id);
      rings.push({when + exp1(rng), id});
    }
  }
  for (int i = 0; i < static_cast<int>(tree.nodes.size()); ++i)
    if (tree.nodes[i].children.empty()) tree.leaves.push_back(i);
  return tree;
}

RootedMultiGraph sample_tree_edge_model(const YuleTree& tree, double lambda, Rng& rng) {
  if (lambda < 0) throw std::invalid_argument("lambda must be nonnegative");
  int b = tree.b;
  std::vector<int> leaf_index(tree.nodes.size(), -1);
  for (int i = 0; i < static_cast<int>(tree.leaves.size()); ++i)
    leaf_index[tree.leaves[i]] = i;
  std::uniform_int_distribution<int> pick(0, b - 1);
  auto descend = [&](int node) {
    while (!tree.nodes[node].children.empty()) node = tree.nodes[node].children[pick(rng)];
    return leaf_index[node];
  };
  EdgeAccumulator acc;
  std::poisson_distribution<long long> per_pair(lambda > 0 ? lambda / b : 1.0);
  for (const auto& node : tree.nodes) {
    if (node.children.empty()) continue;
    for (int c1 = 0; c1 < b; ++c1)
      for (int c2 = c1 + 1; c2 < b; ++c2) {
        long long m = lambda > 0 ? per_pair(rng) : 0;
        for (long long e = 0; e < m; ++e) {
          int u = descend(node.children[c1]);
          int v = descend(node.children[c2]);
          acc.add(std::min(u, v), std::max(u, v));
        }
      }
  }
  return std::move(acc).build(tree.leaves.size(), 0);
}

RootedMultiGraph apply_star(const RootedMultiGraph& g, double lambda, int b, Rng& rng) {
  if (lambda < 0) throw std::invalid_argument("lambda must be nonnegative");
  if (b < 2) throw std::invalid_argument("b must be >= 2");
  if (!g.connected()) throw std::invalid_argument("apply_star needs a connected graph");
  std::uniform_int_distribution<int> pick(0, b - 1);
  EdgeAccumulator acc;
  std::poisson_distribution<long long> per_pair(lambda > 0 ? lambda / b : 1.0);
  for (std::size_t v = 0; v < g.n_vertices; ++v) {
    int base = static_cast<int>(v) * b;
    for (int c1 = 0; c1 < b; ++c1)
      for (int c2 = c1 + 1; c2 < b; ++c2) {
        long long m = lambda > 0 ? per_pair(rng) : 0;
        if (m > 0) acc.add(base + c1, base + c2, m);
      }
  }
  for (const auto& e : g.edges)
    for (long long i = 0; i < e.mult; ++i) {
      int u = e.u * b + pick(rng);
      int v = e.v * b + pick(rng);
      acc.add(std::min(u, v), std::max(u, v));
    }
  RootedMultiGraph out = std::move(acc).build(g.n_vertices * b, g.root * b + pick(rng));
  return out.root_component();
}

MafiaResult run_mafia(const RootedMultiGraph& initial, double lambda, double t, int b,
                      Rng& rng, MafiaMode mode, bool boost, ClockMode clock,
                      double clock_constant) {
  if (lambda < 0 || t < 0) throw std::invalid_argument("lambda and t must be nonnegative");
  if (b < 2) throw std::invalid_argument("b must be >= 2");
  std::exponential_distribution<double> exp1(1.0);
  auto delay = [&] { return clock == ClockMode::Exponential ? exp1(rng) : clock_constant; };
  std::uniform_int_distribution<int> pick(0, b - 1);

  std::vector<char> alive(initial.n_vertices, 1);
  std::vector<std::pair<int, int>> unit;
  std::vector<char> edge_alive;
  std::vector<std::vector<int>> inc(initial.n_vertices);
  for (const auto& e : initial.edges)
    for (long long i = 0; i < e.mult; ++i) {
      int id = static_cast<int>(unit.size());
      unit.emplace_back(e.u, e.v);
      edge_alive.push_back(1);
      inc[static_cast<std::size_t>(e.u)].push_back(id);
      inc[static_cast<std::size_t>(e.v)].push_back(id);
    }

  using Ev = std::pair<double, int>;
  std::priority_queue<Ev, std::vector<Ev>, std::greater<>> q;
  for (std::size_t v = 0; v < initial.n_vertices; ++v)
    q.push({delay(), static_cast<int>(v)});

  int root = initial.root;
  int boost_vertex = boost ? initial.root : -1;
  MafiaResult out;
  std::poisson_distribution<long long> normal_pair(lambda > 0 ? lambda / b : 1.0);
  std::poisson_distribution<long long> boosted_pair(lambda > 0 ? lambda : 1.0);

  auto prune = [&] {
    std::vector<char> reach(alive.size(), 0);
    std::vector<int> stack{root};
    reach[static_cast<std::size_t>(root)] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int e : inc[static_cast<std::size_t>(v)]) {
        if (!edge_alive[static_cast<std::size_t>(e)]) continue;
        int w = unit[static_cast<std::size_t>(e)].first == v
                    ? unit[static_cast<std::size_t>(e)].second
                    : unit[static_cast<std::size_t>(e)].first;
        if (!reach[static_cast<std::size_t>(w)]) {
          reach[static_cast<std::size_t>(w)] = 1;
          stack.push_back(w);
        }
      }
    }
    for (std::size_t v = 0; v < alive.size(); ++v)
      if (alive[v] && !reach[v]) {
        alive[v] = 0;
        for (int e : inc[v]) edge_alive[static_cast<std::size_t>(e)] = 0;
        inc[v].clear();
      }
  };

  while (!q.empty()) {
    auto [when, v] = q.top();
    if (when > t) break;
    q.pop();
    if (!alive[static_cast<std::size_t>(v)]) continue;
    alive[static_cast<std::size_t>(v)] = 0;
    ++out.splits;
    int base = static_cast<int>(alive.size());
    for (int c = 0; c < b; ++c) {
      alive.push_back(1);
      inc.emplace_back();
      q.push({when + delay(), base + c});
    }
    auto& pair_count = v == boost_vertex ? boosted_pair : normal_pair;
    for (int c1 = 0; c1 < b; ++c1)
      for (int c2 = c1 + 1; c2 < b; ++c2) {
        long long m = lambda > 0 ? pair_count(rng) : 0;
        for (long long i = 0; i < m; ++i) {
          int id = static_cast<int>(unit.size());
          unit.emplace_back(base + c1, base + c2);
          edge_alive.push_back(1);
          inc[static_cast<std::size_t>(base + c1)].push_back(id);
          inc[static_cast<std::size_t>(base + c2)].push_back(id);
        }
      }
    for (int e : inc[static_cast<std::size_t>(v)]) {
      if (!edge_alive[static_cast<std::size_t>(e)]) continue;
      auto& [eu, ev] = unit[static_cast<std::size_t>(e)];
      int replacement = base + pick(rng);
      (eu == v ? eu : ev) = replacement;
      inc[static_cast<std::size_t>(replacement)].push_back(e);
    }
    inc[static_cast<std::size_t>(v)].clear();
    if (root == v) root = base + pick(rng);
    if (mode == MafiaMode::RootComponent) prune();
  }

  std::vector<int> remap(alive.size(), -1);
  std::size_t kept = 0;
  for (std::size_t v = 0; v < alive.size(); ++v)
    if (alive[v]) remap[v] = static_cast<int>(kept++);
  EdgeAccumulator acc;
  for (std::size_t e = 0; e < unit.size(); ++e) {
    if (!edge_alive[e]) continue;
    int u = remap[static_cast<std::size_t>(unit[e].first)];
    int v = remap[static_cast<std::size_t>(unit[e].second)];
    if (u < 0 || v < 0) continue;
    acc.add(std::min(u, v), std::max(u, v));
  }
  out.graph = std::move(acc).build(kept, remap[static_cast<std::size_t>(root)]);
  return out;
}

int mafia_limit_path_length(double lambda, double epsilon, int b) {
  if (lambda < 0) throw std::invalid_argument("lambda must be nonnegative");
  if (!(epsilon > 0 && epsilon < 1)) throw std::invalid_argument("epsilon must be in (0,1)");
  double per_step = 1.0 - std::exp(-lambda) / b;
  return static_cast<int>(std::ceil(std::log(epsilon) / std::log(per_step)));
}

namespace {

// lazily realized path-plus-Yule-trees structure for the limit sampler
struct LimitTree {
  struct LNode {
    int tree;        // which path vertex the containing tree hangs on
    double birth;
    double ring;     // birth + ring is the absolute split time
    int parent;      // -1 means the tree root, whose neighbor is the path
    int child0 = -1; // children are child0 and child0 + 1 once realized
    bool internal;
  };

  std::vector<double> age;     // age[i] = s_1 + ... + s_i, tree on v_i
  std::vector<int> tree_root;  // arena id of the root of the tree on v_i
  std::vector<LNode> arena;
  Rng* rng;

  int make_node(int tree, double birth, int parent) {
    std::exponential_distribution<double> exp1(1.0);
    double ring = exp1(*rng);
    arena.push_back({tree, birth, ring, parent, -1, birth + ring < age[static_cast<std::size_t>(tree)]});
    return static_cast<int>(arena.size()) - 1;
  }

  int root_of(int i) {
    if (tree_root[static_cast<std::size_t>(i)] < 0)
      tree_root[static_cast<std::size_t>(i)] = make_node(i, 0.0, -1);
    return tree_root[static_cast<std::size_t>(i)];
  }

  void ensure_children(int id) {
    if (arena[static_cast<std::size_t>(id)].child0 >= 0) return;
    double split = arena[static_cast<std::size_t>(id)].birth + arena[static_cast<std::size_t>(id)].ring;
    int tree = arena[static_cast<std::size_t>(id)].tree;
    int c0 = make_node(tree, split, id);
    make_node(tree, split, id);
    arena[static_cast<std::size_t>(id)].child0 = c0;
  }
};

// walk positions: -1 is "past the truncation", 0..n are path vertices v_i,
// n+1+id is arena node id
struct WalkPos {
  int code;
  static WalkPos path(int i) { return {i}; }
  static WalkPos node(int id, int n) { return {n + 1 + id}; }
  static WalkPos boundary() { return {-1}; }
  bool is_path(int n) const { return code >= 0 && code <= n; }
  int node_id(int n) const { return code - n - 1; }
  bool operator==(const WalkPos&) const = default;
};

}  // namespace

MafiaLimitSample sample_mafia_limit(double lambda, Rng& rng, double epsilon) {
  if (lambda < 0) throw std::invalid_argument("lambda must be nonnegative");
  MafiaLimitSample out;
  if (lambda == 0) {
    out.graph.n_vertices = 1;
    return out;
  }
  int n = mafia_limit_path_length(lambda, epsilon, 2);
  out.path_length = n;
  std::exponential_distribution<double> exp1(1.0);
  LimitTree lt;
  lt.rng = &rng;
  lt.age.assign(static_cast<std::size_t>(n) + 1, 0.0);
  for (int i = 1; i <= n; ++i) lt.age[static_cast<std::size_t>(i)] = lt.age[static_cast<std::size_t>(i) - 1] + exp1(rng);
  lt.tree_root.assign(static_cast<std::size_t>(n) + 1, -1);

  std::uniform_int_distribution<int> coin(0, 1);
  // non-backtracking walk; every branch carries equal weight, so each step is
  // a uniform pick among the neighbors other than the arrival one
  auto walk_from = [&](WalkPos leaf) -> WalkPos {
    WalkPos prev = leaf;
    WalkPos cur;
    if (leaf.is_path(n)) {
      cur = WalkPos::path(1);  // leaf on the path can only be v0
    } else {
      int id = leaf.node_id(n);
      int par = lt.arena[static_cast<std::size_t>(id)].parent;
      cur = par < 0 ? WalkPos::path(lt.arena[static_cast<std::size_t>(id)].tree)
                    : WalkPos::node(par, n);
    }
    while (true) {
      if (cur.code == -1) return WalkPos::boundary();
      if (cur.is_path(n)) {
        int i = cur.code;
        if (i == 0) return cur;  // v0 is a leaf
        WalkPos nbrs[3] = {WalkPos::path(i - 1),
                           i == n ? WalkPos::boundary() : WalkPos::path(i + 1),
                           WalkPos::node(lt.root_of(i), n)};
        WalkPos opts[2];
        int cnt = 0;
        for (const auto& w : nbrs)
          if (!(w == prev)) opts[cnt++] = w;
        prev = cur;
        cur = opts[coin(rng)];
      } else {
        int id = cur.node_id(n);
        LimitTree::LNode nd = lt.arena[static_cast<std::size_t>(id)];  // copy, arena may grow
        if (!nd.internal) return cur;
        lt.ensure_children(id);
        WalkPos up = nd.parent < 0 ? WalkPos::path(nd.tree) : WalkPos::node(nd.parent, n);
        WalkPos nbrs[3] = {up, WalkPos::node(lt.arena[static_cast<std::size_t>(id)].child0, n),
                           WalkPos::node(lt.arena[static_cast<std::size_t>(id)].child0 + 1, n)};
        WalkPos opts[2];
        int cnt = 0;
        for (const auto& w : nbrs)
          if (!(w == prev)) opts[cnt++] = w;
        prev = cur;
        cur = opts[coin(rng)];
      }
    }
  };

  // lazy cluster exploration from v0, same dedup rule as the infinite edge
  // model: stubs landing on an already-processed leaf are dropped
  std::unordered_map<int, int> ids;  // walk code -> graph vertex
  std::vector<WalkPos> vertex_pos;
  std::vector<bool> processed;
  auto intern = [&](WalkPos p) {
    auto [it, fresh] = ids.try_emplace(p.code, static_cast<int>(vertex_pos.size()));
    if (fresh) {
      vertex_pos.push_back(p);
      processed.push_back(false);
    }
    return it->second;
  };
  EdgeAccumulator acc;
  std::queue<int> frontier;
  intern(WalkPos::path(0));
  frontier.push(0);
  std::poisson_distribution<std::uint64_t> stub_count(lambda);
  while (!frontier.empty()) {
    int cur = frontier.front();
    frontier.pop();
    processed[static_cast<std::size_t>(cur)] = true;
    WalkPos from = vertex_pos[static_cast<std::size_t>(cur)];
    std::uint64_t stubs = stub_count(rng);
    for (std::uint64_t s = 0; s < stubs; ++s) {
      WalkPos target = walk_from(from);
      if (target.code == -1) {
        out.boundary_touched = true;
        continue;
      }
      auto it = ids.find(target.code);
      if (it != ids.end() && processed[static_cast<std::size_t>(it->second)]) continue;
      bool fresh = it == ids.end();
      int tid = intern(target);
      if (fresh) frontier.push(tid);
      acc.add(std::min(cur, tid), std::max(cur, tid));
    }
  }
  out.graph = std::move(acc).build(vertex_pos.size(), 0);
  return out;
}

DoubleEdgeStat double_edge_stat(const std::vector<RootedMultiGraph>& samples) {
  DoubleEdgeStat out;
  for (const auto& g : samples) {
    long long deg = 0;
    bool parallel = false;
    for (const auto& e : g.edges)
      if (e.u == g.root || e.v == g.root) {
        deg += e.mult;
        if (e.mult == 2) parallel = true;
      }
    if (deg != 2) continue;
    ++out.conditioned;
    if (parallel) ++out.doubles;
  }
  if (out.conditioned == 0) throw std::runtime_error("no sample has root multi-degree 2");
  out.p = static_cast<double>(out.doubles) / static_cast<double>(out.conditioned);
  out.se = std::sqrt(out.p * (1.0 - out.p) / static_cast<double>(out.conditioned));
  return out;
}

}  // namespace canopy
