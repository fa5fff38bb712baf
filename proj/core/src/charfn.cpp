#include "ftsm/charfn.hpp"

#include <cmath>
#include <stdexcept>

#include "ftsm/quadrature.hpp"
#include "ftsm/special.hpp"

namespace ftsm {

namespace {

using cplx = std::complex<double>;

void require_alpha(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 2.0))
    throw std::invalid_argument("alpha must lie in (0, 2)");
}

// Numeric fallback for the fully compensated exponent, alpha <= 1:
//   vartheta(s) = int_0^inf (e^{isr} - 1 - isr) r^{-alpha-1} e^{-r} dr.
cplx vartheta_numeric(double s, double alpha) {
  if (s == 0.0) return 0.0;
  auto g = [&](double r) {
    const double x = s * r;
    const double half = std::sin(0.5 * x);
    const cplx num(-2.0 * half * half, std::sin(x) - x);
    return num * std::pow(r, -alpha - 1.0) * std::exp(-r);
  };
  const double tol = 1e-12 * (1.0 + s * s);
  return quad::unit_power(g, 1.0 - alpha, 0.0, tol) + quad::adaptive(g, 1.0, 60.0, tol);
}

// Large-argument growth exponent of the kind (with a small overshoot at
// alpha = 1 so the logarithmic factor is absorbed by the substitution).
double growth_of(ExponentKind kind, double alpha) {
  if (alpha == 1.0) return 1.1;
  if (kind == ExponentKind::psi && alpha < 1.0) return alpha;
  return std::max(1.0, alpha);
}

// Small-argument vanishing order of the kind.
double small_pow_of(ExponentKind kind, double alpha) {
  return (kind == ExponentKind::psi && alpha < 1.0) ? 1.0 : 2.0;
}

// int_0^1 sum_j w_j ex(scale x_j K(1, u)) du with endpoint substitutions
// matched to the kernel regime.
cplx kernel_exponent_integral(const KernelParams& kp, const InnerMeasure& rho,
                              double scale, ExponentKind kind, double abs_tol) {
  if (scale == 0.0) return 0.0;
  const double alpha = kp.alpha;
  const double growth = growth_of(kind, alpha);
  const double small = small_pow_of(kind, alpha);
  double e0 = 0.0, e1 = 0.0;
  if (kp.regime == Regime::long_memory) {
    e0 = -kp.delta * growth;
    e1 = kp.delta * small;
  } else if (kp.regime == Regime::rough) {
    e0 = kp.delta * growth;
    e1 = kp.delta * growth;
  }
  auto f = [&](double u) {
    const double k1 = kernel_unit(kp, u);
    cplx acc = 0.0;
    for (const Atom& a : rho.atoms()) acc += a.w * exponent(kind, scale * a.x * k1, alpha);
    return acc;
  };
  return quad::unit_power(f, e0, e1, abs_tol);
}

cplx measure_exponent_sum(const InnerMeasure& rho, double scale, ExponentKind kind,
                          double alpha) {
  cplx acc = 0.0;
  for (const Atom& a : rho.atoms()) acc += a.w * exponent(kind, scale * a.x, alpha);
  return acc;
}

}  // namespace

std::complex<double> exponent(ExponentKind kind, double s, double alpha) {
  require_alpha(alpha);
  if (!std::isfinite(s)) throw std::invalid_argument("exponent: s must be finite");
  switch (kind) {
    case ExponentKind::phi:
      if (alpha == 1.0) return special::xlogx_one_minus_is(s) + cplx(0.0, s);
      return special::gamma_real(-alpha) *
             (special::power_one_minus_is(s, alpha) - 1.0 + cplx(0.0, alpha * s));
    case ExponentKind::psi:
      if (alpha < 1.0)
        return special::gamma_real(-alpha) * (special::power_one_minus_is(s, alpha) - 1.0);
      if (alpha == 1.0)
        return cplx(0.5 * std::log1p(s * s) - s * std::atan(s), 0.0);
      return exponent(ExponentKind::phi, s, alpha);
    case ExponentKind::varphi: {
      if (s == 0.0) return 0.0;
      if (alpha == 1.0)
        return cplx(-0.5 * M_PI * std::fabs(s), s - s * std::log(std::fabs(s)));
      const double amp = special::gamma_real(-alpha) * std::cos(0.5 * M_PI * alpha) *
                         std::pow(std::fabs(s), alpha);
      return amp * cplx(1.0, -std::tan(0.5 * M_PI * alpha) * (s > 0 ? 1.0 : -1.0));
    }
    case ExponentKind::varphi_tilde:
      if (alpha == 1.0) return cplx(-0.5 * M_PI * std::fabs(s), 0.0);
      return exponent(ExponentKind::varphi, s, alpha);
    case ExponentKind::vartheta:
      if (alpha > 1.0) return exponent(ExponentKind::phi, s, alpha);
      return vartheta_numeric(s, alpha);
  }
  throw std::invalid_argument("exponent: unknown kind");
}

std::complex<double> cf_ts(double y, double t, const InnerMeasure& rho, double alpha) {
  require_alpha(alpha);
  if (!(t >= 0.0)) throw std::invalid_argument("cf_ts: t must be nonnegative");
  if (!std::isfinite(y)) throw std::invalid_argument("cf_ts: y must be finite");
  if (t == 0.0 || y == 0.0) return 1.0;
  return std::exp(t * measure_exponent_sum(rho, y, ExponentKind::phi, alpha));
}

std::complex<double> cf_ftsm(double y, double t, const KernelParams& kp,
                             const InnerMeasure& rho) {
  if (!(t >= 0.0)) throw std::invalid_argument("cf_ftsm: t must be nonnegative");
  if (!std::isfinite(y)) throw std::invalid_argument("cf_ftsm: y must be finite");
  if (t == 0.0 || y == 0.0) return 1.0;
  const double scale = y * std::pow(t, kp.delta);
  const double tol = 1e-10 / std::max(1.0, t);
  return std::exp(t * kernel_exponent_integral(kp, rho, scale, ExponentKind::phi, tol));
}

std::complex<double> cf_fsm(double y, double t, const KernelParams& kp,
                            const InnerMeasure& rho) {
  if (!(t >= 0.0)) throw std::invalid_argument("cf_fsm: t must be nonnegative");
  if (!std::isfinite(y)) throw std::invalid_argument("cf_fsm: y must be finite");
  if (kp.alpha == 1.0 && !rho.symmetric())
    throw std::invalid_argument("cf_fsm: alpha = 1 requires a symmetric measure");
  if (t == 0.0 || y == 0.0) return 1.0;
  const double c_alpha = kernel_lp_const(kp, kp.alpha);
  const cplx sum = measure_exponent_sum(rho, y, ExponentKind::varphi_tilde, kp.alpha);
  return std::exp(c_alpha * std::pow(t, kp.alpha * kp.H) * sum);
}

std::complex<double> cf_rescaled_short(double y, double t, const KernelParams& kp,
                                       const InnerMeasure& rho, double h) {
  if (!(t >= 0.0))
    throw std::invalid_argument("cf_rescaled_short: t must be nonnegative");
  if (!(h > 0.0)) throw std::invalid_argument("cf_rescaled_short: h must be positive");
  if (!std::isfinite(y))
    throw std::invalid_argument("cf_rescaled_short: y must be finite");
  if (t == 0.0 || y == 0.0) return 1.0;
  const double scale = y * std::pow(h, -1.0 / kp.alpha) * std::pow(t, kp.delta);
  const double tol = 1e-10 / std::max(1.0, h * t);
  return std::exp(h * t * kernel_exponent_integral(kp, rho, scale, ExponentKind::psi, tol));
}

std::complex<double> cf_rescaled_long(double y, const KernelParams& kp,
                                      const InnerMeasure& rho, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("cf_rescaled_long: h must be positive");
  if (!std::isfinite(y))
    throw std::invalid_argument("cf_rescaled_long: y must be finite");
  if (y == 0.0) return 1.0;
  const double scale = y * std::pow(h, -0.5);
  const double tol = 1e-10 / std::max(1.0, h);
  return std::exp(h * kernel_exponent_integral(kp, rho, scale, ExponentKind::vartheta, tol));
}

std::complex<double> codifference(double theta1, double theta2, double t,
                                  const KernelParams& kp, const InnerMeasure& rho) {
  if (!(t >= 1.0)) throw std::invalid_argument("codifference: t must be >= 1");
  if (!std::isfinite(theta1) || !std::isfinite(theta2))
    throw std::invalid_argument("codifference: thetas must be finite");
  const double alpha = kp.alpha;
  const double growth = growth_of(ExponentKind::phi, alpha);
  double e0 = 0.0, e1 = 0.0;
  if (kp.regime == Regime::long_memory) {
    e0 = -kp.delta * growth;
    e1 = kp.delta;
  } else if (kp.regime == Regime::rough) {
    e0 = kp.delta * growth;
    e1 = kp.delta * std::max(0.0, growth - 1.0);
  }
  auto f = [&](double s) {
    const double dk = theta1 * kernel_time_increment(kp, t + 1.0, t, s);
    const double k1 = theta2 * kernel_unit(kp, s);
    cplx acc = 0.0;
    for (const Atom& a : rho.atoms())
      acc += a.w * (exponent(ExponentKind::phi, a.x * dk, alpha) +
                    exponent(ExponentKind::phi, a.x * k1, alpha) -
                    exponent(ExponentKind::phi, a.x * (dk + k1), alpha));
    return acc;
  };
  return quad::unit_power(f, e0, e1, 1e-11);
}

std::complex<double> codifference_asymptotic_constant(double theta1, double theta2,
                                                      const KernelParams& kp,
                                                      const InnerMeasure& rho) {
  const double alpha = kp.alpha;
  if (alpha == 1.0)
    throw std::invalid_argument(
        "codifference_asymptotic_constant: not defined for alpha = 1");
  if (!std::isfinite(theta1) || !std::isfinite(theta2))
    throw std::invalid_argument(
        "codifference_asymptotic_constant: thetas must be finite");
  if (kp.regime == Regime::levy) return 0.0;
  const double d = kp.delta;
  double e0, e1;
  if (kp.regime == Regime::long_memory) {
    e0 = -d * std::max(1.0, alpha);
    e1 = d;
  } else {
    e0 = 0.0;
    e1 = alpha > 1.0 ? d * (alpha - 1.0) : 0.0;
  }
  auto f = [&](double s) {
    const double k1 = theta2 * kernel_unit(kp, s);
    cplx acc = 0.0;
    for (const Atom& a : rho.atoms())
      acc += a.w * a.x * (special::power_one_minus_is(a.x * k1, alpha - 1.0) - 1.0);
    return acc * std::pow(s, -d);
  };
  const cplx integral = quad::unit_power(f, e0, e1, 1e-11);
  return d * kp.c * theta1 * cplx(0.0, alpha * special::gamma_real(-alpha)) * integral;
}

double covariation_tau(double t, double s, const KernelParams& kp,
                       const InnerMeasure& rho) {
  if (!(kp.alpha > 1.0) || !(kp.alpha < 2.0))
    throw std::invalid_argument("covariation_tau: requires alpha in (1, 2)");
  if (!(t >= 0.0) || !(s >= 0.0))
    throw std::invalid_argument("covariation_tau: times must be nonnegative");
  const double sigma = -special::gamma_real(-kp.alpha) *
                       std::cos(0.5 * M_PI * kp.alpha) * rho.abs_moment(kp.alpha);
  const double c_alpha = kernel_lp_const(kp, kp.alpha);
  const double ah = kp.alpha * kp.H;
  return sigma * c_alpha *
         (std::pow(t, ah) + std::pow(s, ah) - std::pow(std::fabs(t - s), ah));
}

}  // namespace ftsm
