#include "ftsm/kernel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ftsm/quadrature.hpp"
#include "ftsm/special.hpp"

namespace ftsm {

namespace {

constexpr double kLevyTol = 1e-8;  // |G - 1/2| below this collapses to levy
constexpr double kInf = std::numeric_limits<double>::infinity();

// K(1, u) for the long-memory regime (delta > 0), u in (0, 1).
// Hypergeometric series pivoted at u = 1/2:
//   u >= 1/2 expands in (1 - u); u < 1/2 uses the connection formula with
//   coefficient conn = Gamma(1+d) Gamma(-2d) / Gamma(-d) and leading
//   coefficient exactly 1/2.
double k1_long(double u, double d, double c, double conn) {
  if (u >= 0.5) {
    const double w = 1.0 - u;
    double term = 1.0, sum = 1.0;
    for (int k = 0; k < 200 && std::fabs(term) > 1e-18; ++k) {
      term *= (k - d) / (k + 1 + d) * w;
      sum += term;
    }
    return c * std::pow(w, d) * std::pow(u, -d) * sum;
  }
  double term = 1.0, sum = 1.0;
  for (int k = 0; k < 200 && std::fabs(term) > 1e-18; ++k) {
    term *= (k - d) / (k + 1 - 2 * d) * u;
    sum += term;
  }
  return c * std::pow(u, -d) * (0.5 * std::pow(1.0 - u, d) * sum + conn * std::pow(u, 2 * d));
}

// K(1, u) for the rough regime (delta < 0), u in (0, 1), via the two-term
// representation K1 = c u^{-d} ( (1-u)^d - d I(u) ) with I expanded around
// the same pivot; conn = Gamma(d+2) Gamma(-2d) / Gamma(1-d).
double k1_rough(double u, double d, double c, double conn) {
  if (u >= 0.5) {
    const double w = 1.0 - u;
    double term = 1.0, sum = 1.0;
    for (int k = 0; k < 300 && std::fabs(term) > 1e-18; ++k) {
      term *= (1 - d + k) / (d + 2 + k) * w;
      sum += term;
    }
    const double I = std::pow(w, d + 1) / (d + 1) * sum;
    return c * std::pow(u, -d) * (std::pow(w, d) - d * I);
  }
  double term = 1.0, sum = 1.0;
  for (int k = 0; k < 300 && std::fabs(term) > 1e-18; ++k) {
    term *= (1 - d + k) / (1 - 2 * d + k) * u;
    sum += term;
  }
  const double om = 1.0 - u;
  const double I = std::pow(om, d + 1) / (d + 1) *
                   ((d + 1) / (2 * d) * sum + conn * std::pow(u, 2 * d) * std::pow(om, -(d + 1)));
  return c * std::pow(u, -d) * (std::pow(om, d) - d * I);
}

double lp_const_quadrature(const KernelParams& kp, double p);

}  // namespace

KernelParams make_kernel_params(double H, double alpha) {
  if (!(alpha > 0.0) || !(alpha < 2.0))
    throw std::invalid_argument("make_kernel_params: alpha must lie in (0, 2)");
  const double lo = 1.0 / alpha - 0.5, hi = 1.0 / alpha + 0.5;
  if (!(H > lo) || !(H < hi))
    throw std::invalid_argument(
        "make_kernel_params: H must lie in (1/alpha - 1/2, 1/alpha + 1/2)");
  KernelParams kp{};
  kp.H = H;
  kp.alpha = alpha;
  kp.delta = H - 1.0 / alpha;
  kp.G = kp.delta + 0.5;
  if (std::fabs(kp.G - 0.5) < kLevyTol) {
    // Canonicalize: within tolerance the kernel is an exact indicator, so the
    // exponents are pinned to the boundary values to keep scaling laws exact.
    kp.regime = Regime::levy;
    kp.delta = 0.0;
    kp.G = 0.5;
    kp.c = 1.0;
    kp.conn = 0.0;
    kp.c1 = 1.0;
    return kp;
  }
  kp.regime = kp.delta > 0.0 ? Regime::long_memory : Regime::rough;
  const double G = kp.G;
  const double c2 = G * (1.0 - 2.0 * G) * special::gamma_real(0.5 - G) /
                    (special::gamma_real(2.0 - 2.0 * G) * special::gamma_real(G + 0.5));
  kp.c = std::sqrt(c2);
  const double d = kp.delta;
  kp.conn = (kp.regime == Regime::long_memory)
                ? special::gamma_real(1 + d) * special::gamma_real(-2 * d) /
                      special::gamma_real(-d)
                : special::gamma_real(d + 2) * special::gamma_real(-2 * d) /
                      special::gamma_real(1 - d);
  kp.c1 = lp_const_quadrature(kp, 1.0);
  return kp;
}

double g_exponent(const KernelParams& kp) { return kp.G; }

double c_norm(const KernelParams& kp) {
  if (kp.regime == Regime::levy)
    throw std::invalid_argument("c_norm: undefined in the levy regime (indicator kernel)");
  return kp.c;
}

bool lp_integrable(const KernelParams& kp, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("lp_integrable: requires p > 0");
  return std::fabs(kp.delta) < 1.0 / p;
}

double kernel_unit(const KernelParams& kp, double u) {
  switch (kp.regime) {
    case Regime::levy:
      return 1.0;
    case Regime::long_memory:
      return k1_long(u, kp.delta, kp.c, kp.conn);
    default:
      return k1_rough(u, kp.delta, kp.c, kp.conn);
  }
}

double kernel_eval(const KernelParams& kp, double t, double s) {
  if (!(t > 0.0)) throw std::invalid_argument("kernel_eval: requires t > 0");
  if (s < 0.0 || s > t) return 0.0;
  if (kp.regime == Regime::levy) return 1.0;
  if (s == 0.0) return kInf;  // integrable blow-up at the left edge
  if (s == t) return kp.regime == Regime::rough ? kInf : 0.0;
  return std::pow(t, kp.delta) * kernel_unit(kp, s / t);
}

namespace {

double lp_const_quadrature(const KernelParams& kp, double p) {
  const double d = kp.delta;
  auto f = [&](double u) { return std::pow(kernel_unit(kp, u), p); };
  const double e0 = -p * std::fabs(d);
  const double e1 = p * d;
  return quad::unit_power(f, e0, e1, 1e-11);
}

}  // namespace

double kernel_lp_const(const KernelParams& kp, double p) {
  if (!lp_integrable(kp, p))
    throw std::invalid_argument(
        "kernel_lp_const: p outside the integrability window |H - 1/alpha| < 1/p");
  if (kp.regime == Regime::levy) return 1.0;
  return lp_const_quadrature(kp, p);
}

double kernel_primitive(const KernelParams& kp, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("kernel_primitive: requires t >= 0");
  if (t == 0.0) return 0.0;
  if (kp.regime == Regime::levy) return t;
  return kp.c1 * std::pow(t, 1.0 + kp.delta);
}

double inner_product(const KernelParams& kp, double t, double s) {
  if (!(t > 0.0) || !(s > 0.0))
    throw std::invalid_argument("inner_product: requires t, s > 0");
  const double m = std::min(t, s), M = std::max(t, s);
  if (kp.regime == Regime::levy) return m;
  const double d = kp.delta;
  auto f = [&](double v) {
    return kernel_unit(kp, v * m / M) * kernel_unit(kp, v);
  };
  const double e0 = -2.0 * std::fabs(d);
  const double e1 = (t == s) ? 2.0 * d : d;
  return m * std::pow(t * s, d) * quad::unit_power(f, e0, e1, 1e-9);
}

std::pair<double, double> regularized_kernel(const KernelParams& kp, long n,
                                             double eps, double t, double s) {
  if (kp.regime != Regime::long_memory)
    throw std::invalid_argument("regularized_kernel: defined in the long-memory regime only");
  if (n < 1) throw std::invalid_argument("regularized_kernel: requires n >= 1");
  if (!(eps >= 0.0)) throw std::invalid_argument("regularized_kernel: requires eps >= 0");
  if (!(t > 0.0) || !(s > 0.0) || !(s <= t))
    throw std::invalid_argument("regularized_kernel: requires 0 < s <= t");
  const double d = kp.delta;
  const double inv_n = 1.0 / static_cast<double>(n);
  const double deriv = kp.c * d * std::pow(t + inv_n - s, d - 1.0) * std::pow(t / s, d);
  if (s == t) return {eps, deriv};
  auto f = [&](double u) { return std::pow(u, d) * std::pow(u + inv_n - s, d - 1.0); };
  const double est = quad::gl64(f, s, t);
  const double pref = kp.c * d * std::pow(s, -d);
  const double value =
      pref * quad::adaptive(f, s, t, 1e-11 * (1.0 + std::fabs(est)), 30) + eps;
  return {value, deriv};
}

double kernel_time_increment(const KernelParams& kp, double t1, double t2, double s) {
  if (!(s > 0.0) || !(s < t2) || !(t2 <= t1))
    throw std::invalid_argument("kernel_time_increment: requires 0 < s < t2 <= t1");
  if (kp.regime == Regime::levy) return 0.0;
  if (t1 == t2) return 0.0;
  const double d = kp.delta;
  auto f = [&](double u) { return std::pow(u, d) * std::pow(u - s, d - 1.0); };
  const double est = quad::gl64(f, t2, t1);
  const double pref = kp.c * d * std::pow(s, -d);
  return pref * quad::adaptive(f, t2, t1, 1e-12 * (1.0 + std::fabs(est)), 26);
}

}  // namespace ftsm
