#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace canopy::stats {

struct ChiSquareResult {
  double statistic = 0;
  int dof = 0;
  double p_value = 1;
  int bins_used = 0;
};

// Upper tail of the chi-squared distribution.
double chi_squared_sf(double statistic, int dof);

// Two-sample homogeneity test on categorical counts. Categories are pooled
// greedily (in key order) until every pooled expected count is >= min_expected
// in both samples. Throws std::runtime_error if fewer than two usable bins
// remain.
ChiSquareResult chi_square_two_sample(const std::map<long long, std::uint64_t>& a,
                                      const std::map<long long, std::uint64_t>& b,
                                      double min_expected = 5.0);

// Goodness of fit of observed counts against given probabilities (same
// pooling rule; probabilities need not sum to 1, the remainder becomes a
// final bin).
ChiSquareResult chi_square_gof(const std::vector<std::uint64_t>& observed,
                               const std::vector<double>& probabilities,
                               double min_expected = 5.0);

struct WilsonInterval {
  double p = 0;
  double lo = 0;
  double hi = 1;
};

WilsonInterval wilson(std::uint64_t successes, std::uint64_t trials, double z = 1.96);

struct MeanSE {
  double mean = 0;
  double se = 0;
  std::uint64_t n = 0;
};

MeanSE mean_se(const std::vector<double>& xs);

// Largest-monotone fit (pool adjacent violators) and the max raw violation in
// SE units; used to vet threshold probe curves.
double max_monotone_violation_se(const std::vector<double>& p, const std::vector<double>& se);

}  // namespace canopy::stats
