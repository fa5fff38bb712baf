#pragma once

// Deterministic reductions and small-sample statistics used by the
// verification harness.  Sums are pairwise (tree) reductions so results do
// not depend on accumulation order or thread count.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace ftsm::stats {

inline double tree_sum(const double* x, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t half = n / 2;
  return tree_sum(x, half) + tree_sum(x + half, n - half);
}

inline double tree_sum(const std::vector<double>& x) { return tree_sum(x.data(), x.size()); }

inline double tree_mean(const std::vector<double>& x) {
  if (x.empty()) throw std::invalid_argument("tree_mean: empty sample");
  return tree_sum(x) / static_cast<double>(x.size());
}

struct Moments {
  std::size_t n;
  double mean;
  double m2;  // central second moment (biased, 1/n)
  double m3;
  double m4;
};

inline Moments moments(const std::vector<double>& x) {
  const std::size_t n = x.size();
  if (n < 2) throw std::invalid_argument("moments: needs at least two samples");
  const double mean = tree_mean(x);
  std::vector<double> p2(n), p3(n), p4(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = x[i] - mean;
    const double d2 = d * d;
    p2[i] = d2;
    p3[i] = d2 * d;
    p4[i] = d2 * d2;
  }
  const double inv = 1.0 / static_cast<double>(n);
  return Moments{n, mean, tree_sum(p2) * inv, tree_sum(p3) * inv, tree_sum(p4) * inv};
}

// Unbiased sample variance.
inline double variance(const Moments& m) {
  return m.m2 * static_cast<double>(m.n) / static_cast<double>(m.n - 1);
}

inline double skewness(const Moments& m) { return m.m3 / std::pow(m.m2, 1.5); }

inline double excess_kurtosis(const Moments& m) { return m.m4 / (m.m2 * m.m2) - 3.0; }

// Asymptotic standard errors under a near-Gaussian sampling law.
inline double skewness_se(std::size_t n) { return std::sqrt(6.0 / static_cast<double>(n)); }
inline double kurtosis_se(std::size_t n) { return std::sqrt(24.0 / static_cast<double>(n)); }

// Inverse standard normal CDF (Acklam's rational approximation, |rel err| < 1.2e-9).
inline double normal_quantile(double p) {
  if (!(p > 0.0) || !(p < 1.0))
    throw std::invalid_argument("normal_quantile: p must lie in (0, 1)");
  static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                  -2.759285104469687e+02, 1.383577518672690e+02,
                                  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                  -1.556989798598866e+02, 6.680131188771972e+01,
                                  -1.328068155288572e+01};
  static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                  -2.400758277161838e+00, -2.549732539343734e+00,
                                  4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                  2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double q, r;
  if (p < plow) {
    q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - plow) {
    q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  q = p - 0.5;
  r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// Widen a base z-threshold so that k simultaneous comparisons keep the
// family-wise false-alarm rate of a single base-z test.
inline double bonferroni_z(double base_z, int k) {
  if (k <= 1) return base_z;
  const double p = 2.0 * normal_cdf(-base_z) / static_cast<double>(k);
  return -normal_quantile(0.5 * p);
}

// Ordinary least squares y = a + b x; returns (slope, slope standard error).
inline std::pair<double, double> ols_slope(const std::vector<double>& x,
                                           const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 3 || y.size() != n) throw std::invalid_argument("ols_slope: needs n >= 3 matched points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - intercept - slope * x[i];
    ss += r * r;
  }
  const double se = std::sqrt(ss / (static_cast<double>(n - 2) * sxx));
  return {slope, se};
}

}  // namespace ftsm::stats
