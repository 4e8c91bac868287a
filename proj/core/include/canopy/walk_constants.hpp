#pragma once

#include <utility>
#include <vector>

namespace canopy::walk {

/// Certified enclosure of a series value; the truncation error is folded into
/// the upper endpoint.
struct Interval {
  double lo = 0;
  double hi = 0;
  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
};

inline constexpr double kDefaultTol = 1e-12;

/// Probability that a walk on the infinite tree started at a leaf ends at a
/// fixed leaf whose lowest common ancestor with the start has height k:
/// sum over h >= k of (b-1)^2 / ((b^{h+1}-1)(b^h-1)). Successive terms decay
/// faster than b^-2, which certifies the geometric tail bound.
Interval zeta(int k, int b, double tol = kDefaultTol);

/// Closed-form bracket (lower, upper) enclosing zeta(h).
std::pair<double, double> zeta_bounds(int h, int b);

/// Boundary-crossing rate for the descendants of a height-k vertex in the
/// infinite particle model: Xi_k = (b-1) b^k sum_{h>k} b^{h-1} zeta(h).
/// Strictly decreasing in k with limit (b-1)/(b+1).
Interval xi_inf(int k, int b, double tol = kDefaultTol);

/// Finite-tree analogue: xi_fin(k, n) = Xi_k - (b-1) sum_{h>n} b^{h-n+2k-1} zeta(h),
/// which sits in (Xi_k - b^{2k-2n}, Xi_k). Requires n > k.
Interval xi_fin(int k, int n, int b, double tol = kDefaultTol);

/// Edge-model analogue, exactly 1 - b^{k-n}. Requires n > k.
double xi_hat(int k, int n, int b);

/// Connectivity threshold slope sigma_k = log(b) / Xi_k.
double sigma_threshold(int k, int b, double tol = kDefaultTol);

/// Limiting slope sigma_crit = ((b+1)/(b-1)) log b.
double sigma_crit(int b);

/// Mean simple degree of a vertex of the infinite edge model:
/// sum over h >= 1 of (b-1) b^{h-1} (1 - exp(-lambda b^{1-2h})).
Interval degree_series(double lambda, int b, double tol = kDefaultTol);

/// One row of the `constants` table.
struct ConstantRow {
  const char* name;
  int k_or_h;
  int b;
  double value;
  double lo;
  double hi;
};

std::vector<ConstantRow> constants_table(int b, int max_k, double tol = kDefaultTol);

}  // namespace canopy::walk
