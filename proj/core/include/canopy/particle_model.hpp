#pragma once

#include <cstdint>

#include "canopy/multigraph.hpp"
#include "canopy/rng.hpp"

namespace canopy {

enum class WalkMethod { Naive, Exact };

// Endpoint of a simple random walk on the depth-n tree started at leaf x and
// stopped on its first return to the leaf layer. Naive simulates unit steps;
// Exact draws the max height H via P(H >= h) = (b-1)/(b^h - 1) (capped at n)
// and then a uniform leaf below the height-H ancestor of x. Same law.
std::uint64_t sample_walk_endpoint(std::uint64_t x, int n, int b, Rng& rng,
                                   WalkMethod method = WalkMethod::Exact);

// Graph on the b^n leaves: each leaf releases Po(lambda/2) particles, each
// particle walks and drops an edge from its start to its endpoint. Particles
// returning to their start leaf drop nothing (no self-loops).
RootedMultiGraph sample_particle_graph(int n, double lambda, int b, Rng& rng,
                                       WalkMethod method = WalkMethod::Exact);

struct HitEstimate {
  double p = 0;
  double se = 0;
  std::uint64_t hits = 0;
  std::uint64_t trials = 0;
};

// Monte Carlo estimate of the probability that the walk from x ends at y.
HitEstimate estimate_hit_prob(std::uint64_t x, std::uint64_t y, int n, int b,
                              std::uint64_t n_trials, Rng& rng,
                              WalkMethod method = WalkMethod::Exact);

}  // namespace canopy
