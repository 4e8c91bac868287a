#include "canopy/edge_model.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace canopy {

double GeneratingMeasure::pair_rate(int h) const {
  if (h < 1) throw std::invalid_argument("pair_rate needs h >= 1");
  switch (kind) {
    case Kind::Canonical:
      return std::pow(static_cast<double>(b), 1 - 2 * h);
    case Kind::Power:
      return b * std::pow(alpha, -h);
    case Kind::Modulated:
      return std::pow(static_cast<double>(b), -2 * h) * f(h);
  }
  throw std::logic_error("bad measure kind");
}

GeneratingMeasure GeneratingMeasure::canonical(int b) {
  if (b < 2) throw std::invalid_argument("b must be >= 2");
  return {Kind::Canonical, b};
}

GeneratingMeasure GeneratingMeasure::power(double alpha, int b) {
  if (b < 2) throw std::invalid_argument("b must be >= 2");
  if (!(alpha > b)) throw std::invalid_argument("power measure needs alpha > b");
  return {Kind::Power, b, alpha};
}

GeneratingMeasure GeneratingMeasure::modulated(std::function<double(int)> f, int b) {
  if (b < 2) throw std::invalid_argument("b must be >= 2");
  if (!f) throw std::invalid_argument("modulated measure needs a function");
  return {Kind::Modulated, b, 0.0, std::move(f)};
}

namespace {

// uniform unordered pair of leaves with lca height exactly h, placed in a
// uniform height-h subtree of the depth-n tree
std::pair<int, int> place_class_edge(int n, int h, int b, Rng& rng) {
  std::uint64_t sub_size = pow_u64(b, h);
  std::uint64_t half = pow_u64(b, h - 1);
  std::uint64_t n_subtrees = pow_u64(b, n - h);
  std::uint64_t base = std::uniform_int_distribution<std::uint64_t>(0, n_subtrees - 1)(rng) * sub_size;
  std::uniform_int_distribution<int> child(0, b - 1);
  int c1 = child(rng);
  int c2 = std::uniform_int_distribution<int>(0, b - 2)(rng);
  if (c2 >= c1) ++c2;
  std::uniform_int_distribution<std::uint64_t> within(0, half - 1);
  std::uint64_t u = base + static_cast<std::uint64_t>(c1) * half + within(rng);
  std::uint64_t v = base + static_cast<std::uint64_t>(c2) * half + within(rng);
  if (u > v) std::swap(u, v);
  return {static_cast<int>(u), static_cast<int>(v)};
}

RootedMultiGraph sample_by_classes(int n, double lambda, int b,
                                   const std::function<double(int)>& class_mean, Rng& rng) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (lambda < 0) throw std::invalid_argument("lambda must be nonnegative");
  std::uint64_t n_vertices = pow_u64(b, n);
  EdgeAccumulator acc;
  for (int h = 1; h <= n; ++h) {
    double mean = class_mean(h);
    std::uint64_t total = mean > 0 ? std::poisson_distribution<std::uint64_t>(mean)(rng) : 0;
    for (std::uint64_t e = 0; e < total; ++e) {
      auto [u, v] = place_class_edge(n, h, b, rng);
      acc.add(u, v);
    }
  }
  return std::move(acc).build(n_vertices, 0);
}

}  // namespace

RootedMultiGraph sample_finite_edge_model(int n, double lambda, int b, Rng& rng) {
  // pairs at height h: b^{n-h} subtrees x b(b-1)/2 child pairs x b^{2h-2}
  // leaf choices; times the per-pair rate lambda b^{1-2h} this collapses to
  // lambda (b-1)/2 b^{n-h}
  auto class_mean = [&](int h) {
    return lambda * (b - 1) / 2.0 * std::pow(static_cast<double>(b), n - h);
  };
  return sample_by_classes(n, lambda, b, class_mean, rng);
}

RootedMultiGraph sample_group_volume(const GeneratingMeasure& measure, double lambda,
                                     int k, Rng& rng) {
  int b = measure.b;
  auto class_mean = [&](int h) {
    double pairs = std::pow(static_cast<double>(b), k - h) * (b * (b - 1) / 2.0) *
                   std::pow(static_cast<double>(b), 2 * h - 2);
    return lambda * measure.pair_rate(h) * pairs;
  };
  return sample_by_classes(k, lambda, b, class_mean, rng);
}

namespace {

int draw_height(int b, Rng& rng) {
  // P(k) = (b-1) b^{-k}, k >= 1
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  int k = 1;
  while (unif(rng) < 1.0 / b) ++k;
  return k;
}

LeafAddress draw_partner(const LeafAddress& x, int k, int b, Rng& rng) {
  // uniform among the (b-1) b^{k-1} addresses at lca height exactly k from x:
  // coordinates below k uniform, coordinate k shifted by a nonzero amount
  std::vector<std::uint8_t> digits;
  int len = std::max(k, x.ell());
  digits.reserve(static_cast<std::size_t>(len));
  std::uniform_int_distribution<int> any(0, b - 1);
  for (int i = 1; i < k; ++i) digits.push_back(static_cast<std::uint8_t>(any(rng)));
  int shift = std::uniform_int_distribution<int>(1, b - 1)(rng);
  digits.push_back(static_cast<std::uint8_t>((x.digit(k) + shift) % b));
  for (int i = k + 1; i <= len; ++i) digits.push_back(x.digit(i));
  return LeafAddress::from_digits(std::move(digits), b);
}

}  // namespace

ClusterSample explore_infinite_cluster(double lambda, int b, Rng& rng, std::uint64_t cap) {
  if (lambda < 0) throw std::invalid_argument("lambda must be nonnegative");
  if (b < 2) throw std::invalid_argument("b must be >= 2");
  if (cap < 1) throw std::invalid_argument("cap must be >= 1");

  std::unordered_map<LeafAddress, int, LeafAddress::Hash> ids;
  std::vector<LeafAddress> addrs;
  std::vector<bool> processed;
  auto intern = [&](const LeafAddress& a) {
    auto [it, fresh] = ids.try_emplace(a, static_cast<int>(addrs.size()));
    if (fresh) {
      addrs.push_back(a);
      processed.push_back(false);
    }
    return it->second;
  };

  ClusterSample out;
  EdgeAccumulator acc;
  std::queue<int> frontier;
  intern(LeafAddress{});
  frontier.push(0);

  std::poisson_distribution<std::uint64_t> stub_count(lambda > 0 ? lambda : 1.0);
  while (!frontier.empty()) {
    if (addrs.size() > cap) {
      out.truncated = true;
      break;
    }
    int cur = frontier.front();
    frontier.pop();
    processed[static_cast<std::size_t>(cur)] = true;
    ++out.exploration_steps;
    LeafAddress x = addrs[static_cast<std::size_t>(cur)];  // copy, addrs may grow below
    std::uint64_t stubs = lambda > 0 ? stub_count(rng) : 0;
    for (std::uint64_t s = 0; s < stubs; ++s) {
      int k = draw_height(b, rng);
      LeafAddress y = draw_partner(x, k, b, rng);
      auto it = ids.find(y);
      if (it != ids.end() && processed[static_cast<std::size_t>(it->second)]) continue;
      bool fresh = it == ids.end();
      int yid = intern(y);
      if (fresh) frontier.push(yid);
      acc.add(std::min(cur, yid), std::max(cur, yid));
    }
  }

  for (const auto& a : addrs) out.escaped_level = std::max(out.escaped_level, a.ell());
  out.graph = std::move(acc).build(addrs.size(), 0);
  out.graph.labels = std::move(addrs);
  return out;
}

RootDegrees sample_root_degrees(double lambda, int b, Rng& rng) {
  if (lambda < 0) throw std::invalid_argument("lambda must be nonnegative");
  RootDegrees out;
  out.multi = lambda > 0 ? std::poisson_distribution<std::uint64_t>(lambda)(rng) : 0;
  LeafAddress root;
  std::unordered_map<LeafAddress, bool, LeafAddress::Hash> seen;
  for (std::uint64_t s = 0; s < out.multi; ++s) {
    int k = draw_height(b, rng);
    seen.try_emplace(draw_partner(root, k, b, rng), true);
  }
  out.simple = seen.size();
  return out;
}

}  // namespace canopy
