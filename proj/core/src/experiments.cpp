#include "canopy/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_set>

#include "canopy/parallel.hpp"
#include "canopy/particle_model.hpp"
#include "canopy/walk_constants.hpp"

namespace canopy {

std::string model_name(Model m) {
  switch (m) {
    case Model::Edge: return "edge";
    case Model::Particle: return "particle";
    case Model::Mafia: return "mafia";
  }
  return "?";
}

Model parse_model(const std::string& name) {
  if (name == "edge") return Model::Edge;
  if (name == "particle") return Model::Particle;
  if (name == "mafia") return Model::Mafia;
  throw std::invalid_argument("unknown model: " + name);
}

SweepRecord summarize(const RootedMultiGraph& g, Model model, int size, double lambda,
                      std::uint64_t replicate, std::uint64_t seed, bool truncated) {
  SweepRecord r;
  r.model = model_name(model);
  r.b = 2;
  r.size = size;
  r.lambda = lambda;
  r.replicate = replicate;
  r.seed = seed;
  r.cluster_size = g.root_component_size();
  r.edges = g.multi_edge_count();
  r.connected = g.connected();
  r.isolated = g.isolated_count();
  r.truncated = truncated;
  return r;
}

RootedMultiGraph sample_model(Model model, int size, double lambda, int b, Rng& rng) {
  switch (model) {
    case Model::Edge:
      return sample_finite_edge_model(size, lambda, b, rng);
    case Model::Particle:
      return sample_particle_graph(size, lambda, b, rng);
    case Model::Mafia: {
      YuleTree tree = sample_yule_tree(size, b, rng);
      return sample_tree_edge_model(tree, lambda, rng);
    }
  }
  throw std::logic_error("bad model");
}

ChiEstimate estimate_chi(double lambda, int b, std::uint64_t n_samples,
                         std::uint64_t master_seed, int workers, std::uint64_t cap) {
  struct Rep {
    double size = 1;
    bool truncated = false;
  };
  auto reps = parallel_replicates(n_samples, master_seed, workers,
                                  [&](std::uint64_t, Rng& rng) {
                                    ClusterSample cs = explore_infinite_cluster(lambda, b, rng, cap);
                                    return Rep{static_cast<double>(cs.graph.n_vertices), cs.truncated};
                                  });
  ChiEstimate out;
  std::vector<double> sizes;
  for (const auto& r : reps) {
    if (r.truncated) {
      ++out.n_truncated;
      continue;
    }
    sizes.push_back(r.size);
  }
  out.n_used = sizes.size();
  out.refused = out.n_truncated * 100 > n_samples;
  if (sizes.empty()) {
    out.refused = true;
    return out;
  }
  auto ms = stats::mean_se(sizes);
  out.mean = ms.mean;
  out.se = ms.se;
  std::sort(sizes.begin(), sizes.end());
  auto quantile = [&](double q) {
    return sizes[std::min(sizes.size() - 1, static_cast<std::size_t>(q * static_cast<double>(sizes.size())))];
  };
  out.q50 = quantile(0.50);
  out.q90 = quantile(0.90);
  out.q99 = quantile(0.99);
  double total = 0, top = 0;
  for (double s : sizes) total += s;
  std::size_t top_count = std::max<std::size_t>(1, sizes.size() / 100);
  for (std::size_t i = sizes.size() - top_count; i < sizes.size(); ++i) top += sizes[i];
  out.top_percentile_mass = total > 0 ? top / total : 0;
  out.heavy_tail = out.top_percentile_mass > 0.5;
  return out;
}

stats::ChiSquareResult invariance_test(int n, double lambda, int b, std::uint64_t n_samples,
                                       std::uint64_t master_seed, int workers,
                                       double lambda_right) {
  if (lambda_right < 0) lambda_right = lambda;
  auto key_of = [](const RootedMultiGraph& g) {
    long long edges = std::min<long long>(g.multi_edge_count(), 999'999);
    return static_cast<long long>(g.n_vertices) * 1'000'000 + edges;
  };
  struct Keys {
    long long left = 0, right = 0;
  };
  auto reps = parallel_replicates(
      n_samples, master_seed, workers, [&](std::uint64_t, Rng& rng) {
        RootedMultiGraph left = sample_finite_edge_model(n, lambda, b, rng).root_component();
        left = apply_star(left, lambda, b, rng);
        RootedMultiGraph right =
            sample_finite_edge_model(n + 1, lambda_right, b, rng).root_component();
        return Keys{key_of(left), key_of(right)};
      });
  std::map<long long, std::uint64_t> ha, hb;
  for (const auto& k : reps) {
    ++ha[k.left];
    ++hb[k.right];
  }
  if (ha.size() == 1 && hb.size() == 1 && ha.begin()->first == hb.begin()->first)
    return {0.0, 1, 1.0, 1};  // identical point masses
  return stats::chi_square_two_sample(ha, hb);
}

namespace {

struct ConnFlags {
  bool connected = false;
  bool no_isolated = false;
};

}  // namespace

std::vector<SweepPoint> sweep_connectivity(Model model, int size,
                                           const std::vector<double>& lambda_grid, int b,
                                           std::uint64_t n_samples, std::uint64_t master_seed,
                                           int workers) {
  for (std::size_t j = 1; j < lambda_grid.size(); ++j)
    if (!(lambda_grid[j] > lambda_grid[j - 1]))
      throw std::invalid_argument("lambda grid must be strictly increasing");
  std::uint64_t total = lambda_grid.size() * n_samples;
  auto reps = parallel_replicates(total, master_seed, workers, [&](std::uint64_t r, Rng& rng) {
    double lambda = lambda_grid[static_cast<std::size_t>(r / n_samples)];
    RootedMultiGraph g = sample_model(model, size, lambda, b, rng);
    return ConnFlags{g.connected(), g.isolated_count() == 0};
  });
  std::vector<SweepPoint> out;
  for (std::size_t j = 0; j < lambda_grid.size(); ++j) {
    SweepPoint pt;
    pt.lambda = lambda_grid[j];
    pt.n = n_samples;
    std::uint64_t conn = 0, noiso = 0;
    for (std::uint64_t i = 0; i < n_samples; ++i) {
      const auto& f = reps[j * n_samples + i];
      conn += f.connected;
      noiso += f.no_isolated;
    }
    auto nd = static_cast<double>(n_samples);
    pt.p_connected = static_cast<double>(conn) / nd;
    pt.p_no_isolated = static_cast<double>(noiso) / nd;
    pt.se_connected = std::sqrt(pt.p_connected * (1 - pt.p_connected) / nd);
    pt.se_no_isolated = std::sqrt(pt.p_no_isolated * (1 - pt.p_no_isolated) / nd);
    out.push_back(pt);
  }
  return out;
}

std::vector<SweepRecord> sweep_records(Model model, int size,
                                       const std::vector<double>& lambda_grid, int b,
                                       std::uint64_t n_samples, std::uint64_t master_seed,
                                       int workers) {
  for (std::size_t j = 1; j < lambda_grid.size(); ++j)
    if (!(lambda_grid[j] > lambda_grid[j - 1]))
      throw std::invalid_argument("lambda grid must be strictly increasing");
  std::uint64_t total = lambda_grid.size() * n_samples;
  auto recs = parallel_replicates(total, master_seed, workers, [&](std::uint64_t r, Rng& rng) {
    double lambda = lambda_grid[static_cast<std::size_t>(r / n_samples)];
    RootedMultiGraph g = sample_model(model, size, lambda, b, rng);
    SweepRecord rec = summarize(g, model, size, lambda, r, derive_seed(master_seed, r));
    rec.b = b;
    return rec;
  });
  return recs;
}

namespace {

SweepPoint probe_point(Model model, int size, double lambda, int b, std::uint64_t n,
                       std::uint64_t probe_seed, int workers) {
  auto pts = sweep_connectivity(model, size, {lambda}, b, n, probe_seed, workers);
  return pts[0];
}

double event_prob(const SweepPoint& pt, ThresholdEvent ev) {
  return ev == ThresholdEvent::Connected ? pt.p_connected : pt.p_no_isolated;
}

double event_se(const SweepPoint& pt, ThresholdEvent ev) {
  return ev == ThresholdEvent::Connected ? pt.se_connected : pt.se_no_isolated;
}

}  // namespace

ThresholdEstimate bisect_threshold(Model model, int size, int b, ThresholdEvent event,
                                   double lambda_lo, double lambda_hi, double target,
                                   std::uint64_t n_per_probe, std::uint64_t master_seed,
                                   int workers, int max_iter) {
  if (n_per_probe == 0) throw std::invalid_argument("n_per_probe must be positive");
  if (!(lambda_lo < lambda_hi)) throw std::invalid_argument("empty bracket");
  if (!(target > 0 && target < 1)) throw std::invalid_argument("target must be in (0,1)");
  ThresholdEstimate out;
  out.target = target;
  out.n_per_probe = n_per_probe;
  std::uint64_t probe_idx = 0;
  auto probe = [&](double lambda) {
    SweepPoint pt = probe_point(model, size, lambda, b, n_per_probe,
                                derive_seed(master_seed, probe_idx++), workers);
    out.probes.push_back(pt);
    return pt;
  };
  double p_lo = event_prob(probe(lambda_lo), event);
  double p_hi = event_prob(probe(lambda_hi), event);
  if (!(p_lo < target && p_hi > target))
    throw std::invalid_argument("bracket does not straddle the target probability");
  double lo = lambda_lo, hi = lambda_hi;
  for (int it = 0; it < max_iter; ++it) {
    double mid = 0.5 * (lo + hi);
    double p = event_prob(probe(mid), event);
    (p < target ? lo : hi) = mid;
  }
  out.lambda_star = 0.5 * (lo + hi);
  out.ci_lo = lo;
  out.ci_hi = hi;
  std::sort(out.probes.begin(), out.probes.end(),
            [](const SweepPoint& a, const SweepPoint& c) { return a.lambda < c.lambda; });
  std::vector<double> ps, ses;
  for (const auto& pt : out.probes) {
    ps.push_back(event_prob(pt, event));
    ses.push_back(event_se(pt, event));
  }
  out.max_monotone_violation_se = stats::max_monotone_violation_se(ps, ses);
  if (out.max_monotone_violation_se > 3.0)
    throw std::runtime_error("probe curve violates monotonicity beyond 3 SE");
  return out;
}

CertTree CertTree::complete(int n, int b) {
  CertTree t;
  t.b = b;
  std::uint64_t n_leaves = pow_u64(b, n);
  t.leaf_nodes.resize(n_leaves);
  // preorder build; the subtree at height h covers a contiguous leaf-index
  // block, child c owning [base + c b^{h-1}, ...)
  struct Frame {
    int height;
    std::uint64_t base;
    int parent;
  };
  std::vector<Frame> stack{{n, 0, -1}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    int id = static_cast<int>(t.parent.size());
    t.parent.push_back(f.parent);
    t.children.emplace_back();
    t.depth.push_back(f.parent < 0 ? 0 : t.depth[static_cast<std::size_t>(f.parent)] + 1);
    if (f.parent >= 0) t.children[static_cast<std::size_t>(f.parent)].push_back(id);
    if (f.height == 0) {
      t.leaf_nodes[f.base] = id;
    } else {
      std::uint64_t step = pow_u64(b, f.height - 1);
      for (int c = b - 1; c >= 0; --c)
        stack.push_back({f.height - 1, f.base + static_cast<std::uint64_t>(c) * step, id});
    }
  }
  t.root = 0;
  return t;
}

CertTree CertTree::from_yule(const YuleTree& tree) {
  CertTree t;
  t.b = tree.b;
  t.root = 0;
  t.parent.resize(tree.nodes.size());
  t.children.resize(tree.nodes.size());
  t.depth.resize(tree.nodes.size());
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    t.parent[i] = tree.nodes[i].parent;
    t.children[i] = tree.nodes[i].children;
    t.depth[i] = tree.nodes[i].parent < 0 ? 0 : t.depth[static_cast<std::size_t>(tree.nodes[i].parent)] + 1;
  }
  for (int leaf : tree.leaves) t.leaf_nodes.push_back(leaf);
  return t;
}

namespace {

std::uint64_t pair_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

// ancestors of `node` at distance 1..k, nearest first
std::vector<int> ancestors_up_to(const CertTree& t, int node, int k) {
  std::vector<int> out;
  int cur = node;
  for (int d = 0; d < k; ++d) {
    cur = t.parent[static_cast<std::size_t>(cur)];
    if (cur < 0) break;
    out.push_back(cur);
  }
  return out;
}

// siblings of ancestors at distance <= k, i.e. the k-uncles of `node`
std::vector<int> uncles_up_to(const CertTree& t, int node, int k) {
  std::vector<int> out;
  for (int a : ancestors_up_to(t, node, k)) {
    int p = t.parent[static_cast<std::size_t>(a)];
    if (p < 0) continue;
    for (int s : t.children[static_cast<std::size_t>(p)])
      if (s != a) out.push_back(s);
  }
  return out;
}

}  // namespace

CertificateResult linkage_certificate(const RootedMultiGraph& g, const CertTree& tree, int k) {
  if (g.n_vertices != tree.leaf_nodes.size())
    throw std::invalid_argument("graph vertices must be the tree leaves");
  CertificateResult out;
  out.connected = g.connected();

  // mark every ancestor pair joined by some edge
  std::unordered_set<std::uint64_t> linked_pairs;
  auto chain = [&](int leaf_node) {
    std::vector<int> c;
    for (int cur = leaf_node; cur >= 0; cur = tree.parent[static_cast<std::size_t>(cur)])
      c.push_back(cur);
    return c;
  };
  for (const auto& e : g.edges) {
    auto cu = chain(tree.leaf_nodes[static_cast<std::size_t>(e.u)]);
    auto cv = chain(tree.leaf_nodes[static_cast<std::size_t>(e.v)]);
    for (int a : cu)
      for (int c : cv)
        if (a != c) linked_pairs.insert(pair_key(a, c));
  }
  auto linked = [&](int a, int c) { return linked_pairs.count(pair_key(a, c)) > 0; };

  std::vector<int> weak_only_parents;  // sibling sets passing (i) only weakly
  auto result_false = [&] {
    out.certified = false;
    return out;
  };

  for (std::size_t p = 0; p < tree.children.size(); ++p) {
    const auto& sibs = tree.children[p];
    if (sibs.empty()) continue;
    int b = static_cast<int>(sibs.size());
    // components of the linked-pairs graph on the siblings
    std::vector<int> comp(sibs.size());
    for (int i = 0; i < b; ++i) comp[static_cast<std::size_t>(i)] = i;
    auto find = [&](int x) {
      while (comp[static_cast<std::size_t>(x)] != x) x = comp[static_cast<std::size_t>(x)];
      return x;
    };
    for (int i = 0; i < b; ++i)
      for (int j = i + 1; j < b; ++j)
        if (linked(sibs[static_cast<std::size_t>(i)], sibs[static_cast<std::size_t>(j)])) {
          int a = find(i), c = find(j);
          if (a != c) comp[static_cast<std::size_t>(a)] = c;
        }
    int n_comp = 0;
    for (int i = 0; i < b; ++i) n_comp += find(i) == i;
    bool strong = n_comp == 1;
    bool in_top_layers = tree.depth[p] + 1 <= k;
    if (strong) continue;
    if (in_top_layers) return result_false();  // (iii)
    if (n_comp != 2) return result_false();    // (i): not even weakly linkable
    bool weak = false;
    for (int z : uncles_up_to(tree, sibs[0], k)) {
      int seen_comp = -1;
      for (int i = 0; i < b && !weak; ++i)
        if (linked(sibs[static_cast<std::size_t>(i)], z)) {
          int c = find(i);
          if (seen_comp == -1)
            seen_comp = c;
          else if (seen_comp != c)
            weak = true;
        }
      if (weak) break;
    }
    if (!weak) return result_false();  // (i)
    weak_only_parents.push_back(static_cast<int>(p));
  }

  // (ii): no two weak-only sibling sets may be k-cousins. Sibling sets are
  // k-cousins when some ancestor (within distance k) of one set's member is a
  // sibling of such an ancestor of the other's.
  for (std::size_t a = 0; a < weak_only_parents.size(); ++a)
    for (std::size_t c = a + 1; c < weak_only_parents.size(); ++c) {
      int xa = tree.children[static_cast<std::size_t>(weak_only_parents[a])][0];
      int xc = tree.children[static_cast<std::size_t>(weak_only_parents[c])][0];
      auto anc_a = ancestors_up_to(tree, xa, k);
      auto anc_c = ancestors_up_to(tree, xc, k);
      for (int u : anc_a)
        for (int v : anc_c)
          if (u != v && tree.parent[static_cast<std::size_t>(u)] >= 0 &&
              tree.parent[static_cast<std::size_t>(u)] == tree.parent[static_cast<std::size_t>(v)])
            return result_false();
    }

  out.certified = true;
  return out;
}

IsolatedBoundResult isolated_bound_check(std::uint64_t n_vertices, double q,
                                         double empirical_p_no_isolated, double empirical_se) {
  if (!(q > 0 && q <= 1)) throw std::invalid_argument("q must be in (0,1]");
  IsolatedBoundResult out;
  out.bound = 2.0 / (2.0 + static_cast<double>(n_vertices) * q);
  out.within = empirical_p_no_isolated <= out.bound + 3.0 * empirical_se;
  return out;
}

std::vector<PercolationPoint> percolation_sweep(const GeneratingMeasure& measure, double lambda,
                                                const std::vector<int>& k_grid,
                                                std::uint64_t n_samples,
                                                std::uint64_t master_seed, int workers) {
  for (std::size_t j = 1; j < k_grid.size(); ++j)
    if (k_grid[j] <= k_grid[j - 1])
      throw std::invalid_argument("k grid must be strictly increasing");
  std::vector<PercolationPoint> out;
  struct Frac {
    double largest = 0, root = 0;
  };
  for (std::size_t j = 0; j < k_grid.size(); ++j) {
    int k = k_grid[j];
    double volume = std::pow(static_cast<double>(measure.b), k);
    auto reps = parallel_replicates(
        n_samples, derive_seed(master_seed, j), workers, [&](std::uint64_t, Rng& rng) {
          RootedMultiGraph g = sample_group_volume(measure, lambda, k, rng);
          return Frac{static_cast<double>(g.largest_component_size()) / volume,
                      static_cast<double>(g.root_component_size()) / volume};
        });
    std::vector<double> largest, root;
    for (const auto& f : reps) {
      largest.push_back(f.largest);
      root.push_back(f.root);
    }
    auto ms = stats::mean_se(largest);
    PercolationPoint pt;
    pt.k = k;
    pt.mean_fraction = ms.mean;
    pt.se = ms.se;
    pt.mean_root_fraction = stats::mean_se(root).mean;
    out.push_back(pt);
  }
  return out;
}

std::vector<DegreeRow> degree_check(const std::vector<double>& lambda_grid, int b,
                                    std::uint64_t n_samples, std::uint64_t master_seed,
                                    int workers) {
  std::vector<DegreeRow> out;
  struct Deg {
    double multi = 0, simple = 0;
  };
  for (std::size_t j = 0; j < lambda_grid.size(); ++j) {
    double lambda = lambda_grid[j];
    if (!(lambda > 0)) throw std::invalid_argument("lambda grid entries must be positive");
    auto reps = parallel_replicates(n_samples, derive_seed(master_seed, j), workers,
                                    [&](std::uint64_t, Rng& rng) {
                                      RootDegrees d = sample_root_degrees(lambda, b, rng);
                                      return Deg{static_cast<double>(d.multi),
                                                 static_cast<double>(d.simple)};
                                    });
    std::vector<double> multi, simple;
    for (const auto& d : reps) {
      multi.push_back(d.multi);
      simple.push_back(d.simple);
    }
    DegreeRow row;
    row.lambda = lambda;
    row.series = walk::degree_series(lambda, b).mid();
    auto ms = stats::mean_se(simple);
    row.mc_simple = ms.mean;
    row.mc_simple_se = ms.se;
    auto mm = stats::mean_se(multi);
    row.mc_multi = mm.mean;
    row.mc_multi_se = mm.se;
    row.ratio = row.series / std::sqrt(lambda);
    out.push_back(row);
  }
  return out;
}

}  // namespace canopy
