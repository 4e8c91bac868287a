// command line front end: seeds, parallel replicates, CSV/JSON emission.
// Exit codes: 0 ok, 2 usage error, 3 estimator refusal.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "canopy/dynamics.hpp"
#include "canopy/edge_model.hpp"
#include "canopy/experiments.hpp"
#include "canopy/records.hpp"
#include "canopy/walk_constants.hpp"

namespace {

using namespace canopy;

struct Output {
  std::ofstream file;
  std::ostream* os = &std::cout;
  void open(const std::string& path) {
    if (path.empty()) return;
    file.open(path);
    if (!file) throw CLI::ValidationError("--output", "cannot open " + path);
    os = &file;
  }
};

std::vector<double> parse_grid(const std::string& text) {
  // "lo:hi:step" or a single value
  std::vector<double> out;
  auto c1 = text.find(':');
  if (c1 == std::string::npos) {
    out.push_back(std::stod(text));
    return out;
  }
  auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string::npos) throw CLI::ValidationError("grid", "expected lo:hi:step");
  double lo = std::stod(text.substr(0, c1));
  double hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
  double step = std::stod(text.substr(c2 + 1));
  if (step <= 0 || hi < lo) throw CLI::ValidationError("grid", "bad grid bounds");
  for (double x = lo; x <= hi + step * 1e-9; x += step) out.push_back(x);
  return out;
}

int workers_default() {
  if (const char* env = std::getenv("CANOPY_WORKERS")) return std::max(1, std::atoi(env));
  return static_cast<int>(std::thread::hardware_concurrency());
}

std::string output_default() {
  if (const char* env = std::getenv("CANOPY_OUTPUT")) return env;
  return {};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"long-range percolation toolkit on infinite direct sums of Z_b"};
  app.require_subcommand(1);

  int b = 2;
  std::uint64_t seed = 1;
  int workers = workers_default();
  std::string output = output_default();
  std::string format = "csv";
  app.add_option("--b", b, "branching factor")->check(CLI::Range(2, 16));
  app.add_option("--seed", seed, "master seed");
  app.add_option("--workers", workers, "worker threads");
  app.add_option("--output,-o", output, "output path (default stdout)");
  app.add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  // constants
  auto* c_cmd = app.add_subcommand("constants", "walk constants table");
  int max_k = 10;
  double tol = walk::kDefaultTol;
  c_cmd->add_option("--max-k", max_k)->check(CLI::Range(1, 60));
  c_cmd->add_option("--tol", tol);

  // sample
  auto* s_cmd = app.add_subcommand("sample", "dump one sampled graph");
  std::string model_str = "edge";
  int size = 5;
  double lambda = 1.0;
  s_cmd->add_option("--model", model_str)->check(CLI::IsMember({"edge", "particle", "mafia"}));
  s_cmd->add_option("--n,--t", size, "size parameter (n, or t for mafia)");
  s_cmd->add_option("--lambda", lambda);

  // chi
  auto* chi_cmd = app.add_subcommand("chi", "mean cluster size of the infinite model");
  double chi_lambda = 1.0;
  std::uint64_t chi_samples = 10000;
  std::uint64_t cap = 1'000'000;
  chi_cmd->add_option("--lambda", chi_lambda);
  chi_cmd->add_option("--samples", chi_samples);
  chi_cmd->add_option("--cap", cap);

  // sweep
  auto* sw_cmd = app.add_subcommand("sweep", "connectivity sweep over a lambda grid");
  std::string sw_model = "edge", sw_grid = "1:2:0.5";
  int sw_size = 8;
  std::uint64_t sw_samples = 1000;
  sw_cmd->add_option("--model", sw_model)->check(CLI::IsMember({"edge", "particle", "mafia"}));
  sw_cmd->add_option("--n,--t", sw_size);
  sw_cmd->add_option("--lambda", sw_grid, "grid lo:hi:step or single value");
  sw_cmd->add_option("--samples", sw_samples);

  // threshold
  auto* th_cmd = app.add_subcommand("threshold", "bisect a probability-1/2 crossing");
  std::string th_model = "edge", th_event = "connected";
  int th_size = 8;
  double th_lo = 0.1, th_hi = 20.0, th_target = 0.5;
  std::uint64_t th_samples = 400;
  th_cmd->add_option("--model", th_model)->check(CLI::IsMember({"edge", "particle", "mafia"}));
  th_cmd->add_option("--event", th_event)->check(CLI::IsMember({"connected", "noisolated"}));
  th_cmd->add_option("--n,--t", th_size);
  th_cmd->add_option("--lo", th_lo);
  th_cmd->add_option("--hi", th_hi);
  th_cmd->add_option("--target", th_target);
  th_cmd->add_option("--samples", th_samples, "replicates per probe");

  // invariance
  auto* inv_cmd = app.add_subcommand("invariance", "split-vs-grow distribution test");
  int inv_n = 5;
  double inv_lambda = 1.0, inv_lambda_right = -1;
  std::uint64_t inv_samples = 100000;
  inv_cmd->add_option("--n", inv_n);
  inv_cmd->add_option("--lambda", inv_lambda);
  inv_cmd->add_option("--lambda-right", inv_lambda_right, "perturbed right side (negative control)");
  inv_cmd->add_option("--samples", inv_samples);

  // mafia
  auto* mf_cmd = app.add_subcommand("mafia", "asynchronous splitting process");
  double mf_lambda = 1.0, mf_t = 3.0;
  std::string mf_mode = "root";
  bool mf_boost = false, mf_dump = false;
  mf_cmd->add_option("--lambda", mf_lambda);
  mf_cmd->add_option("--t", mf_t);
  mf_cmd->add_option("--mode", mf_mode)->check(CLI::IsMember({"keepall", "root"}));
  mf_cmd->add_flag("--boost", mf_boost);
  mf_cmd->add_flag("--dump", mf_dump, "emit edge list instead of a summary");

  // yule
  auto* yl_cmd = app.add_subcommand("yule", "leaf-splitting random tree");
  double yl_t = 3.0;
  std::uint64_t yl_samples = 1;
  yl_cmd->add_option("--t", yl_t);
  yl_cmd->add_option("--samples", yl_samples);

  // mlimit
  auto* ml_cmd = app.add_subcommand("mlimit", "stationary limit of the asynchronous process");
  double ml_lambda = 1.0, ml_eps = 1e-6;
  std::uint64_t ml_samples = 1;
  ml_cmd->add_option("--lambda", ml_lambda);
  ml_cmd->add_option("--epsilon", ml_eps);
  ml_cmd->add_option("--samples", ml_samples);

  // percolation
  auto* pc_cmd = app.add_subcommand("percolation", "largest-cluster fractions on growing volumes");
  std::string pc_measure = "canonical";
  double pc_alpha = 3.0, pc_lambda = 20.0;
  int pc_kmin = 8, pc_kmax = 12, pc_kstep = 2;
  std::uint64_t pc_samples = 50;
  pc_cmd->add_option("--measure", pc_measure)->check(CLI::IsMember({"canonical", "power"}));
  pc_cmd->add_option("--alpha", pc_alpha);
  pc_cmd->add_option("--lambda", pc_lambda);
  pc_cmd->add_option("--kmin", pc_kmin);
  pc_cmd->add_option("--kmax", pc_kmax);
  pc_cmd->add_option("--kstep", pc_kstep)->check(CLI::PositiveNumber);
  pc_cmd->add_option("--samples", pc_samples);

  // degree
  auto* dg_cmd = app.add_subcommand("degree", "simple degree vs the series value");
  std::string dg_grid = "1";
  std::uint64_t dg_samples = 10000;
  dg_cmd->add_option("--lambda", dg_grid, "grid lo:hi:step or single value");
  dg_cmd->add_option("--samples", dg_samples);

  // certificate
  auto* ct_cmd = app.add_subcommand("certificate", "linkage certificate statistics");
  std::string ct_model = "edge";
  int ct_size = 6, ct_k = 3;
  double ct_lambda = 8.0;
  std::uint64_t ct_samples = 100;
  ct_cmd->add_option("--model", ct_model)->check(CLI::IsMember({"edge", "particle", "mafia"}));
  ct_cmd->add_option("--n,--t", ct_size);
  ct_cmd->add_option("--k", ct_k);
  ct_cmd->add_option("--lambda", ct_lambda);
  ct_cmd->add_option("--samples", ct_samples);

  for (CLI::App* sc : {c_cmd, s_cmd, chi_cmd, sw_cmd, th_cmd, inv_cmd, mf_cmd, yl_cmd, ml_cmd,
                       pc_cmd, dg_cmd, ct_cmd})
    sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  auto started = std::chrono::steady_clock::now();
  Output out;
  int rc = 0;
  try {
    out.open(output);
    std::ostream& os = *out.os;

    if (c_cmd->parsed()) {
      os << "name,k,b,value,lo,hi\n";
      for (const auto& row : walk::constants_table(b, max_k, tol))
        os << row.name << ',' << row.k_or_h << ',' << row.b << ',' << format_double(row.value)
           << ',' << format_double(row.lo) << ',' << format_double(row.hi) << '\n';
    } else if (s_cmd->parsed()) {
      Rng rng = make_rng(derive_seed(seed, 0));
      RootedMultiGraph g = sample_model(parse_model(model_str), size, lambda, b, rng);
      dump_graph(os, g, b, size);
    } else if (chi_cmd->parsed()) {
      ChiEstimate est = estimate_chi(chi_lambda, b, chi_samples, seed, workers, cap);
      if (est.refused) {
        std::cerr << "error: estimate refused, " << est.n_truncated
                  << " truncated explorations out of " << chi_samples << "\n";
        rc = 3;
      } else {
        os << "lambda,mean,se,n_used,n_truncated,heavy_tail,top_percentile_mass,q50,q90,q99\n";
        os << format_double(chi_lambda) << ',' << format_double(est.mean) << ','
           << format_double(est.se) << ',' << est.n_used << ',' << est.n_truncated << ','
           << (est.heavy_tail ? 1 : 0) << ',' << format_double(est.top_percentile_mass) << ','
           << format_double(est.q50) << ',' << format_double(est.q90) << ','
           << format_double(est.q99) << '\n';
      }
    } else if (sw_cmd->parsed()) {
      auto recs = sweep_records(parse_model(sw_model), sw_size, parse_grid(sw_grid), b,
                                sw_samples, seed, workers);
      if (format == "json")
        write_json(os, recs, seed);
      else
        write_csv(os, recs);
    } else if (th_cmd->parsed()) {
      auto ev = th_event == "connected" ? ThresholdEvent::Connected : ThresholdEvent::NoIsolated;
      ThresholdEstimate est = bisect_threshold(parse_model(th_model), th_size, b, ev, th_lo,
                                               th_hi, th_target, th_samples, seed, workers);
      os << "lambda_star,ci_lo,ci_hi,target,n_per_probe,probes,max_violation_se\n";
      os << format_double(est.lambda_star) << ',' << format_double(est.ci_lo) << ','
         << format_double(est.ci_hi) << ',' << format_double(est.target) << ','
         << est.n_per_probe << ',' << est.probes.size() << ','
         << format_double(est.max_monotone_violation_se) << '\n';
    } else if (inv_cmd->parsed()) {
      auto res = invariance_test(inv_n, inv_lambda, b, inv_samples, seed, workers,
                                 inv_lambda_right);
      os << "statistic,dof,p_value,bins\n";
      os << format_double(res.statistic) << ',' << res.dof << ',' << format_double(res.p_value)
         << ',' << res.bins_used << '\n';
    } else if (mf_cmd->parsed()) {
      Rng rng = make_rng(derive_seed(seed, 0));
      RootedMultiGraph start;
      start.n_vertices = 1;
      MafiaResult res =
          run_mafia(start, mf_lambda, mf_t, b, rng,
                    mf_mode == "keepall" ? MafiaMode::KeepAll : MafiaMode::RootComponent,
                    mf_boost);
      if (mf_dump) {
        os << b << ' ' << format_double(mf_t) << ' ' << res.graph.root << '\n';
        for (const auto& e : res.graph.edges) os << e.u << ' ' << e.v << ' ' << e.mult << '\n';
      } else {
        os << "vertices,edges,splits,root_component\n";
        os << res.graph.n_vertices << ',' << res.graph.multi_edge_count() << ',' << res.splits
           << ',' << res.graph.root_component_size() << '\n';
      }
    } else if (yl_cmd->parsed()) {
      os << "replicate,leaves,internal\n";
      for (std::uint64_t i = 0; i < yl_samples; ++i) {
        Rng rng = make_rng(derive_seed(seed, i));
        YuleTree tree = sample_yule_tree(yl_t, b, rng);
        os << i << ',' << tree.leaves.size() << ',' << tree.nodes.size() - tree.leaves.size()
           << '\n';
      }
    } else if (ml_cmd->parsed()) {
      os << "replicate,path_length,vertices,edges,boundary_touched\n";
      for (std::uint64_t i = 0; i < ml_samples; ++i) {
        Rng rng = make_rng(derive_seed(seed, i));
        MafiaLimitSample s = sample_mafia_limit(ml_lambda, rng, ml_eps);
        os << i << ',' << s.path_length << ',' << s.graph.n_vertices << ','
           << s.graph.multi_edge_count() << ',' << (s.boundary_touched ? 1 : 0) << '\n';
      }
    } else if (pc_cmd->parsed()) {
      GeneratingMeasure m = pc_measure == "power" ? GeneratingMeasure::power(pc_alpha, b)
                                                  : GeneratingMeasure::canonical(b);
      std::vector<int> ks;
      for (int k = pc_kmin; k <= pc_kmax; k += pc_kstep) ks.push_back(k);
      os << "k,mean_fraction,se,mean_root_fraction\n";
      for (const auto& pt : percolation_sweep(m, pc_lambda, ks, pc_samples, seed, workers))
        os << pt.k << ',' << format_double(pt.mean_fraction) << ',' << format_double(pt.se)
           << ',' << format_double(pt.mean_root_fraction) << '\n';
    } else if (dg_cmd->parsed()) {
      os << "lambda,series,mc_simple,mc_simple_se,mc_multi,mc_multi_se,ratio\n";
      for (const auto& row : degree_check(parse_grid(dg_grid), b, dg_samples, seed, workers))
        os << format_double(row.lambda) << ',' << format_double(row.series) << ','
           << format_double(row.mc_simple) << ',' << format_double(row.mc_simple_se) << ','
           << format_double(row.mc_multi) << ',' << format_double(row.mc_multi_se) << ','
           << format_double(row.ratio) << '\n';
    } else if (ct_cmd->parsed()) {
      Model m = parse_model(ct_model);
      std::uint64_t certified = 0, connected = 0, violations = 0;
      for (std::uint64_t i = 0; i < ct_samples; ++i) {
        Rng rng = make_rng(derive_seed(seed, i));
        CertificateResult res;
        if (m == Model::Mafia) {
          YuleTree tree = sample_yule_tree(ct_size, b, rng);
          RootedMultiGraph g = sample_tree_edge_model(tree, ct_lambda, rng);
          res = linkage_certificate(g, CertTree::from_yule(tree), ct_k);
        } else {
          RootedMultiGraph g = sample_model(m, ct_size, ct_lambda, b, rng);
          res = linkage_certificate(g, CertTree::complete(ct_size, b), ct_k);
        }
        certified += res.certified;
        connected += res.connected;
        violations += res.certified && !res.connected;
      }
      os << "samples,certified,connected,certified_not_connected\n";
      os << ct_samples << ',' << certified << ',' << connected << ',' << violations << '\n';
      if (violations > 0) {
        std::cerr << "error: certificate claimed connectivity on a disconnected graph\n";
        rc = 3;
      }
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started);
  std::cerr << "wall_seconds " << elapsed.count() << "\n";
  return rc;
}
