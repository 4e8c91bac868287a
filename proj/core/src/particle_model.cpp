#include "canopy/particle_model.hpp"

#include <cmath>
#include <stdexcept>

#include "canopy/leaf_address.hpp"

namespace canopy {

namespace {

std::uint64_t endpoint_naive(std::uint64_t x, int n, int b, Rng& rng) {
  // state: height h, index s of the vertex among the b^{n-h} at that height
  int h = 1;
  std::uint64_t s = x / b;
  std::uniform_int_distribution<int> apex_child(0, b - 1);
  std::uniform_int_distribution<int> full(0, b);  // b means "parent"
  while (true) {
    int r = (h == n) ? apex_child(rng) : full(rng);
    if (r == b) {
      ++h;
      s /= b;
    } else {
      --h;
      s = s * b + static_cast<std::uint64_t>(r);
      if (h == 0) return s;
    }
  }
}

std::uint64_t endpoint_exact(std::uint64_t x, int n, int b, Rng& rng) {
  // P(H >= h) = (b-1)/(b^h - 1); the first step forces H >= 1
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double u = unif(rng);
  int h = 1;
  while (h < n && u <= static_cast<double>(b - 1) / (pow_u64(b, h + 1) - 1)) ++h;
  std::uint64_t block = pow_u64(b, h);
  std::uint64_t base = (x / block) * block;
  return base + std::uniform_int_distribution<std::uint64_t>(0, block - 1)(rng);
}

}  // namespace

std::uint64_t sample_walk_endpoint(std::uint64_t x, int n, int b, Rng& rng,
                                   WalkMethod method) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (b < 2) throw std::invalid_argument("b must be >= 2");
  if (x >= pow_u64(b, n)) throw std::invalid_argument("leaf index out of range");
  return method == WalkMethod::Naive ? endpoint_naive(x, n, b, rng)
                                     : endpoint_exact(x, n, b, rng);
}

RootedMultiGraph sample_particle_graph(int n, double lambda, int b, Rng& rng,
                                       WalkMethod method) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (lambda < 0) throw std::invalid_argument("lambda must be nonnegative");
  std::uint64_t n_leaves = pow_u64(b, n);
  EdgeAccumulator acc;
  std::poisson_distribution<std::uint64_t> particles(lambda > 0 ? lambda / 2 : 1.0);
  for (std::uint64_t x = 0; x < n_leaves; ++x) {
    std::uint64_t count = lambda > 0 ? particles(rng) : 0;
    for (std::uint64_t p = 0; p < count; ++p) {
      std::uint64_t y = sample_walk_endpoint(x, n, b, rng, method);
      if (y == x) continue;
      acc.add(static_cast<int>(std::min(x, y)), static_cast<int>(std::max(x, y)));
    }
  }
  return std::move(acc).build(n_leaves, 0);
}

HitEstimate estimate_hit_prob(std::uint64_t x, std::uint64_t y, int n, int b,
                              std::uint64_t n_trials, Rng& rng, WalkMethod method) {
  if (n_trials < 1) throw std::invalid_argument("need at least one trial");
  HitEstimate est;
  est.trials = n_trials;
  for (std::uint64_t t = 0; t < n_trials; ++t)
    if (sample_walk_endpoint(x, n, b, rng, method) == y) ++est.hits;
  est.p = static_cast<double>(est.hits) / n_trials;
  est.se = std::sqrt(est.p * (1.0 - est.p) / n_trials);
  return est;
}

}  // namespace canopy
