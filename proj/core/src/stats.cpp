#include "canopy/stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace canopy::stats {

double chi_squared_sf(double statistic, int dof) {
  if (dof < 1) throw std::invalid_argument("dof must be >= 1");
  if (statistic <= 0) return 1.0;
  boost::math::chi_squared_distribution<double> dist(dof);
  return boost::math::cdf(boost::math::complement(dist, statistic));
}

namespace {

// pool adjacent categories until each pooled bin clears the expected-count
// floor in every row; a trailing short bin is merged backwards
std::vector<std::vector<double>> pool(const std::vector<std::vector<double>>& expected,
                                      const std::vector<std::vector<double>>& observed,
                                      double min_expected,
                                      std::vector<std::vector<double>>& observed_out) {
  std::size_t rows = expected.size();
  std::size_t cols = expected[0].size();
  std::vector<std::vector<double>> exp_out(rows), obs_out(rows);
  std::vector<double> eacc(rows, 0), oacc(rows, 0);
  for (std::size_t c = 0; c < cols; ++c) {
    bool ok = true;
    for (std::size_t r = 0; r < rows; ++r) {
      eacc[r] += expected[r][c];
      oacc[r] += observed[r][c];
    }
    for (std::size_t r = 0; r < rows; ++r) ok = ok && eacc[r] >= min_expected;
    if (ok) {
      for (std::size_t r = 0; r < rows; ++r) {
        exp_out[r].push_back(eacc[r]);
        obs_out[r].push_back(oacc[r]);
        eacc[r] = oacc[r] = 0;
      }
    }
  }
  bool leftover = false;
  for (std::size_t r = 0; r < rows; ++r) leftover = leftover || eacc[r] > 0 || oacc[r] > 0;
  if (leftover && !exp_out[0].empty()) {
    for (std::size_t r = 0; r < rows; ++r) {
      exp_out[r].back() += eacc[r];
      obs_out[r].back() += oacc[r];
    }
  }
  observed_out = std::move(obs_out);
  return exp_out;
}

}  // namespace

ChiSquareResult chi_square_two_sample(const std::map<long long, std::uint64_t>& a,
                                      const std::map<long long, std::uint64_t>& b,
                                      double min_expected) {
  std::map<long long, std::pair<double, double>> merged;
  double na = 0, nb = 0;
  for (auto [k, v] : a) {
    merged[k].first += static_cast<double>(v);
    na += static_cast<double>(v);
  }
  for (auto [k, v] : b) {
    merged[k].second += static_cast<double>(v);
    nb += static_cast<double>(v);
  }
  if (na == 0 || nb == 0) throw std::runtime_error("empty sample");
  double total = na + nb;
  std::vector<std::vector<double>> expected(2), observed(2);
  for (auto [k, v] : merged) {
    double col = v.first + v.second;
    expected[0].push_back(col * na / total);
    expected[1].push_back(col * nb / total);
    observed[0].push_back(v.first);
    observed[1].push_back(v.second);
  }
  std::vector<std::vector<double>> obs;
  auto exp2 = pool(expected, observed, min_expected, obs);
  ChiSquareResult res;
  res.bins_used = static_cast<int>(exp2[0].size());
  if (res.bins_used < 2) throw std::runtime_error("too few bins after pooling");
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < exp2[r].size(); ++c) {
      double d = obs[r][c] - exp2[r][c];
      res.statistic += d * d / exp2[r][c];
    }
  res.dof = res.bins_used - 1;
  res.p_value = chi_squared_sf(res.statistic, res.dof);
  return res;
}

ChiSquareResult chi_square_gof(const std::vector<std::uint64_t>& observed_counts,
                               const std::vector<double>& probabilities,
                               double min_expected) {
  if (observed_counts.size() != probabilities.size())
    throw std::invalid_argument("size mismatch");
  double n = 0, ptot = 0;
  for (auto c : observed_counts) n += static_cast<double>(c);
  for (auto p : probabilities) ptot += p;
  if (n == 0) throw std::runtime_error("empty sample");
  if (ptot > 1 + 1e-9) throw std::invalid_argument("probabilities sum past 1");
  std::vector<std::vector<double>> expected(1), observed(1);
  for (std::size_t i = 0; i < observed_counts.size(); ++i) {
    expected[0].push_back(n * probabilities[i]);
    observed[0].push_back(static_cast<double>(observed_counts[i]));
  }
  if (ptot < 1 - 1e-9) {  // remainder bin, observed zero by construction
    expected[0].push_back(n * (1 - ptot));
    observed[0].push_back(0);
  }
  std::vector<std::vector<double>> obs;
  auto exp2 = pool(expected, observed, min_expected, obs);
  ChiSquareResult res;
  res.bins_used = static_cast<int>(exp2[0].size());
  if (res.bins_used < 2) throw std::runtime_error("too few bins after pooling");
  for (std::size_t c = 0; c < exp2[0].size(); ++c) {
    double d = obs[0][c] - exp2[0][c];
    res.statistic += d * d / exp2[0][c];
  }
  res.dof = res.bins_used - 1;
  res.p_value = chi_squared_sf(res.statistic, res.dof);
  return res;
}

WilsonInterval wilson(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) throw std::invalid_argument("trials must be positive");
  double nd = static_cast<double>(trials);
  double p = static_cast<double>(successes) / nd;
  double z2 = z * z;
  double denom = 1 + z2 / nd;
  double center = (p + z2 / (2 * nd)) / denom;
  double half = z / denom * std::sqrt(p * (1 - p) / nd + z2 / (4 * nd * nd));
  return {p, center - half, center + half};
}

MeanSE mean_se(const std::vector<double>& xs) {
  MeanSE out;
  out.n = xs.size();
  if (xs.empty()) return out;
  double sum = 0;
  for (double x : xs) sum += x;
  out.mean = sum / static_cast<double>(xs.size());
  if (xs.size() < 2) return out;
  double ss = 0;
  for (double x : xs) ss += (x - out.mean) * (x - out.mean);
  out.se = std::sqrt(ss / (static_cast<double>(xs.size()) - 1) / static_cast<double>(xs.size()));
  return out;
}

double max_monotone_violation_se(const std::vector<double>& p, const std::vector<double>& se) {
  if (p.size() != se.size()) throw std::invalid_argument("size mismatch");
  double worst = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) {
        double denom = std::sqrt(se[i] * se[i] + se[j] * se[j]);
        double v = denom > 0 ? (p[i] - p[j]) / denom
                             : std::numeric_limits<double>::infinity();
        worst = std::max(worst, v);
      }
  return worst;
}

}  // namespace canopy::stats
