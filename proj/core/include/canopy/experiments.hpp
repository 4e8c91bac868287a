#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "canopy/dynamics.hpp"
#include "canopy/edge_model.hpp"
#include "canopy/multigraph.hpp"
#include "canopy/stats.hpp"

namespace canopy {

enum class Model { Edge, Particle, Mafia };

std::string model_name(Model m);
Model parse_model(const std::string& name);

// One replicate's summary, the unit of all CSV/JSON emission.
struct SweepRecord {
  std::string model;
  int b = 2;
  int size = 0;  // n for edge/particle, t for mafia, k for group volumes
  double lambda = 0;
  std::uint64_t replicate = 0;
  std::uint64_t seed = 0;
  std::uint64_t cluster_size = 1;  // root component
  long long edges = 0;
  bool connected = false;
  long long isolated = 0;
  bool truncated = false;
};

SweepRecord summarize(const RootedMultiGraph& g, Model model, int size, double lambda,
                      std::uint64_t replicate, std::uint64_t seed, bool truncated = false);

// One sample of the given model at the given size; mafia means the edge model
// on an age-`size` Yule tree (the keep-all asynchronous picture).
RootedMultiGraph sample_model(Model model, int size, double lambda, int b, Rng& rng);

struct ChiEstimate {
  double mean = 1;
  double se = 0;
  std::uint64_t n_used = 0;
  std::uint64_t n_truncated = 0;
  bool refused = false;      // too many truncated explorations
  bool heavy_tail = false;   // top 1% of samples carries > 50% of the mass
  double top_percentile_mass = 0;
  double q50 = 1, q90 = 1, q99 = 1;
};

// Mean cluster size of the infinite edge model by repeated exploration.
// Truncated runs are excluded; more than 1% of them refuses the estimate.
ChiEstimate estimate_chi(double lambda, int b, std::uint64_t n_samples,
                         std::uint64_t master_seed, int workers,
                         std::uint64_t cap = 1'000'000);

// Joint (cluster size, edge count) histogram comparison between the split
// root component of the size-n model and the root component of the size-(n+1)
// model. lambda_right perturbs the right side (negative control); it
// defaults to lambda.
stats::ChiSquareResult invariance_test(int n, double lambda, int b, std::uint64_t n_samples,
                                       std::uint64_t master_seed, int workers,
                                       double lambda_right = -1);

struct SweepPoint {
  double lambda = 0;
  double p_connected = 0;
  double se_connected = 0;
  double p_no_isolated = 0;
  double se_no_isolated = 0;
  std::uint64_t n = 0;
};

std::vector<SweepPoint> sweep_connectivity(Model model, int size,
                                           const std::vector<double>& lambda_grid, int b,
                                           std::uint64_t n_samples, std::uint64_t master_seed,
                                           int workers);

// Per-replicate records for the same sweep (what the CLI emits).
std::vector<SweepRecord> sweep_records(Model model, int size,
                                       const std::vector<double>& lambda_grid, int b,
                                       std::uint64_t n_samples, std::uint64_t master_seed,
                                       int workers);

enum class ThresholdEvent { Connected, NoIsolated };

struct ThresholdEstimate {
  double lambda_star = 0;
  double ci_lo = 0;
  double ci_hi = 0;
  double target = 0.5;
  std::uint64_t n_per_probe = 0;
  std::vector<SweepPoint> probes;
  double max_monotone_violation_se = 0;
};

// Bisection for the lambda where the event probability crosses the target.
// Throws std::invalid_argument unless the initial bracket straddles the
// target, or if the probe curve violates monotonicity by more than 3 SE.
ThresholdEstimate bisect_threshold(Model model, int size, int b, ThresholdEvent event,
                                   double lambda_lo, double lambda_hi, double target,
                                   std::uint64_t n_per_probe, std::uint64_t master_seed,
                                   int workers, int max_iter = 12);

// Leaf tree shape for the linkage certificate: either the complete depth-n
// tree (leaf i of the graph is leaf index i) or a sampled Yule tree (leaf i
// is tree.leaves[i]).
struct CertTree {
  int b = 2;
  int root = 0;
  std::vector<int> parent;
  std::vector<std::vector<int>> children;
  std::vector<int> depth;
  std::vector<int> leaf_nodes;  // graph vertex -> tree node
  static CertTree complete(int n, int b);
  static CertTree from_yule(const YuleTree& tree);
};

struct CertificateResult {
  bool certified = false;
  bool connected = false;  // independent union-find check
};

// Linkage certificate: every sibling set strongly or weakly linked, of any
// two k-cousin sibling sets at least one strongly linked, and sibling sets in
// the top k layers strongly linked. certified implies connected.
CertificateResult linkage_certificate(const RootedMultiGraph& g, const CertTree& tree, int k);

struct IsolatedBoundResult {
  double bound = 0;  // 2 / (2 + n q)
  bool within = false;
};

IsolatedBoundResult isolated_bound_check(std::uint64_t n_vertices, double q,
                                         double empirical_p_no_isolated, double empirical_se);

struct PercolationPoint {
  int k = 0;
  double mean_fraction = 0;  // largest cluster / b^k
  double se = 0;
  double mean_root_fraction = 0;  // identity's cluster / b^k
};

std::vector<PercolationPoint> percolation_sweep(const GeneratingMeasure& measure, double lambda,
                                                const std::vector<int>& k_grid,
                                                std::uint64_t n_samples,
                                                std::uint64_t master_seed, int workers);

struct DegreeRow {
  double lambda = 0;
  double series = 0;       // certified series value
  double mc_simple = 0;
  double mc_simple_se = 0;
  double mc_multi = 0;
  double mc_multi_se = 0;
  double ratio = 0;        // series / sqrt(lambda)
};

std::vector<DegreeRow> degree_check(const std::vector<double>& lambda_grid, int b,
                                    std::uint64_t n_samples, std::uint64_t master_seed,
                                    int workers);

}  // namespace canopy
