#include "canopy/walk_constants.hpp"

#include <cmath>
#include <stdexcept>

namespace canopy::walk {

namespace {

void check_b(int b) {
  if (b < 2) throw std::invalid_argument("branching factor must be >= 2");
}

double bpow(int b, int e) { return std::pow(static_cast<double>(b), e); }

// Series term t_j = (b-1)^2 / ((b^{j+1}-1)(b^j-1)).
double zeta_term(int j, int b) {
  double c = static_cast<double>(b - 1);
  return c * c / ((bpow(b, j + 1) - 1.0) * (bpow(b, j) - 1.0));
}

// S(m) = sum_{j>m} t_j (b^j - b^m), obtained from the double series
// sum_{h>m} b^{h-1} zeta_h by swapping the order of summation:
// Xi_m = b^m S(m). Term ratio is at most (b+1)/b^2.
Interval boundary_series(int m, int b, double tol) {
  double ratio = static_cast<double>(b + 1) / (b * b);
  double sum = 0.0;
  double term = 0.0;
  for (int j = m + 1;; ++j) {
    term = zeta_term(j, b) * (bpow(b, j) - bpow(b, m));
    sum += term;
    double tail = term * ratio / (1.0 - ratio);
    if (tail <= tol * sum) return {sum, sum + tail};
    if (j > m + 4000) throw std::runtime_error("boundary series failed to converge");
  }
}

}  // namespace

Interval zeta(int k, int b, double tol) {
  check_b(b);
  if (k < 1) throw std::invalid_argument("zeta requires k >= 1: walks start at a leaf");
  if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
  double ratio = 1.0 / (b * b);
  double sum = 0.0;
  for (int h = k;; ++h) {
    double term = zeta_term(h, b);
    sum += term;
    double tail = term * ratio / (1.0 - ratio);
    if (tail <= tol * sum) return {sum, sum + tail};
    if (h > k + 4000) throw std::runtime_error("zeta series failed to converge");
  }
}

std::pair<double, double> zeta_bounds(int h, int b) {
  check_b(b);
  if (h < 1) throw std::invalid_argument("zeta_bounds requires h >= 1");
  double c = static_cast<double>(b - 1) / (b + 1);
  double lower = c * (bpow(b, 1 - 2 * h) + bpow(b, 1 - 3 * h));
  double upper = (1.0 + 1.0 / (bpow(b, h) - 1.0)) * (1.0 + 1.0 / (bpow(b, h + 1) - 1.0)) *
                 c * bpow(b, 1 - 2 * h);
  return {lower, upper};
}

Interval xi_inf(int k, int b, double tol) {
  check_b(b);
  if (k < 0) throw std::invalid_argument("xi_inf requires k >= 0");
  Interval s = boundary_series(k, b, tol);
  double scale = bpow(b, k);
  return {scale * s.lo, scale * s.hi};
}

Interval xi_fin(int k, int n, int b, double tol) {
  check_b(b);
  if (n <= k || k < 0) throw std::invalid_argument("xi_fin requires n > k >= 0");
  Interval xk = xi_inf(k, b, tol);
  Interval xn = xi_inf(n, b, tol);
  double scale = bpow(b, 2 * k - 2 * n);
  return {xk.lo - scale * xn.hi, xk.hi - scale * xn.lo};
}

double xi_hat(int k, int n, int b) {
  check_b(b);
  if (n <= k || k < 0) throw std::invalid_argument("xi_hat requires n > k >= 0");
  return 1.0 - bpow(b, k - n);
}

double sigma_threshold(int k, int b, double tol) {
  return std::log(static_cast<double>(b)) / xi_inf(k, b, tol).mid();
}

double sigma_crit(int b) {
  check_b(b);
  return static_cast<double>(b + 1) / (b - 1) * std::log(static_cast<double>(b));
}

Interval degree_series(double lambda, int b, double tol) {
  check_b(b);
  if (lambda < 0) throw std::invalid_argument("lambda must be nonnegative");
  if (lambda == 0) return {0.0, 0.0};
  double sum = 0.0;
  for (int h = 1;; ++h) {
    double rate = lambda * bpow(b, 1 - 2 * h);
    sum += (b - 1) * bpow(b, h - 1) * (-std::expm1(-rate));
    double tail = lambda * bpow(b, -h);  // 1 - e^-x <= x, geometric in h
    if (tail <= tol * sum) return {sum, sum + tail};
    if (h > 4000) throw std::runtime_error("degree series failed to converge");
  }
}

std::vector<ConstantRow> constants_table(int b, int max_k, double tol) {
  std::vector<ConstantRow> rows;
  for (int h = 1; h <= max_k; ++h) {
    Interval z = zeta(h, b, tol);
    rows.push_back({"zeta", h, b, z.mid(), z.lo, z.hi});
  }
  for (int k = 0; k <= max_k; ++k) {
    Interval x = xi_inf(k, b, tol);
    rows.push_back({"xi_inf", k, b, x.mid(), x.lo, x.hi});
  }
  for (int k = 0; k <= max_k; ++k) {
    double s = sigma_threshold(k, b, tol);
    rows.push_back({"sigma", k, b, s, s, s});
  }
  double sc = sigma_crit(b);
  rows.push_back({"sigma_crit", -1, b, sc, sc, sc});
  return rows;
}

}  // namespace canopy::walk
