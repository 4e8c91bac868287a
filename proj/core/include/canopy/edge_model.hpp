#pragma once

#include <cstdint>
#include <functional>

#include "canopy/leaf_address.hpp"
#include "canopy/multigraph.hpp"
#include "canopy/rng.hpp"

namespace canopy {

// Decay profile for pair edge rates as a function of the lca height h.
// pair_rate(h) is the Poisson mean per unit lambda for an unordered pair
// whose difference has last nonzero coordinate h.
struct GeneratingMeasure {
  enum class Kind { Canonical, Power, Modulated };

  Kind kind;
  int b;
  double alpha = 0.0;                     // Power only
  std::function<double(int)> f;           // Modulated only, must be increasing

  double pair_rate(int h) const;

  static GeneratingMeasure canonical(int b);
  // throws std::invalid_argument unless alpha > b (otherwise the total mass
  // sum_h (b-1) b^{h-1} alpha^{-h} diverges)
  static GeneratingMeasure power(double alpha, int b);
  static GeneratingMeasure modulated(std::function<double(int)> f, int b);
};

struct ClusterSample {
  RootedMultiGraph graph;
  int escaped_level = 0;      // max last-nonzero-coordinate over all vertices hit
  bool truncated = false;
  std::uint64_t exploration_steps = 0;
};

// Graph on the b^n leaves of the depth-n tree, indices in [0, b^n), root 0.
// Edge count between a fixed pair at lca height h is Po(lambda b^{1-2h});
// sampled one height class at a time (Poisson total, uniform placement).
RootedMultiGraph sample_finite_edge_model(int n, double lambda, int b, Rng& rng);

// Graph on the b^k group elements with last nonzero coordinate <= k, same
// aggregated sampling but with the class rate taken from the measure.
// canonical(b) reproduces sample_finite_edge_model(k, lambda, b) in law.
RootedMultiGraph sample_group_volume(const GeneratingMeasure& measure, double lambda,
                                     int k, Rng& rng);

// Component of the identity in the infinite-volume model, sampled lazily:
// each newly discovered vertex draws Po(lambda) edge stubs, each stub picks a
// height k with P(k) = (b-1) b^{-k} and a uniform partner at that height.
// Stubs landing on an already-processed vertex are dropped (that pair's count
// was fixed when the partner was processed), so per-pair counts stay Poisson.
ClusterSample explore_infinite_cluster(double lambda, int b, Rng& rng,
                                       std::uint64_t cap = 1'000'000);

// Root degrees in the infinite model without building the cluster: the total
// stub count is Po(lambda), the simple degree counts distinct partners.
struct RootDegrees {
  std::uint64_t multi = 0;
  std::uint64_t simple = 0;
};
RootDegrees sample_root_degrees(double lambda, int b, Rng& rng);

}  // namespace canopy
