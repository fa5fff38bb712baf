#include "ftsm/series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "ftsm/quadrature.hpp"
#include "ftsm/rng.hpp"
#include "ftsm/special.hpp"

namespace ftsm {

namespace {

void validate_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("grid must be nonempty");
  double prev = -1.0;
  for (double t : grid) {
    if (!std::isfinite(t) || t < 0.0)
      throw std::invalid_argument("grid points must be finite and nonnegative");
    if (!(t > prev)) throw std::invalid_argument("grid must be strictly increasing");
    prev = t;
  }
}

void validate_driver(const SeriesDriver& drv, const SeriesConstants& sc,
                     const std::vector<double>& grid) {
  validate_grid(grid);
  if (drv.alpha != sc.alpha || drv.horizon_T != sc.horizon_T)
    throw std::runtime_error("series constants do not match the driver");
  const auto n = static_cast<std::size_t>(drv.n_terms);
  if (drv.gammas.size() != n || drv.exps.size() != n || drv.unifs.size() != n ||
      drv.vmarks.size() != n || drv.times.size() != n)
    throw std::runtime_error("driver arrays do not match n_terms");
  if (grid.back() > drv.horizon_T * (1.0 + 1e-12))
    throw std::invalid_argument("grid extends beyond the driver horizon");
}

bool vatoms_symmetric(const std::vector<std::pair<double, double>>& va) {
  std::size_t i = 0, j = va.size();
  while (i < j) {
    --j;
    if (i > j) break;
    const double xl = va[i].first, xr = va[j].first;
    const double pl = va[i].second, pr = va[j].second;
    if (std::fabs(xl + xr) > 1e-12 * (std::fabs(xl) + std::fabs(xr))) return false;
    if (std::fabs(pl - pr) > 1e-12 * (pl + pr)) return false;
    ++i;
  }
  return true;
}

// Lower-triangular Cholesky factor of a symmetric positive-definite matrix,
// row-major, in place.
void cholesky_lower(std::vector<double>& a, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    double d = a[j * n + j];
    for (std::size_t k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
    if (!(d > 0.0))
      throw std::runtime_error("tail covariance is not positive definite");
    const double ljj = std::sqrt(d);
    a[j * n + j] = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
      a[i * n + j] = s / ljj;
    }
    for (std::size_t k = j + 1; k < n; ++k) a[j * n + k] = 0.0;
  }
}

std::string path_provenance(const char* kind, double H, double alpha,
                            const SeriesDriver& drv) {
  char buf[320];
  std::snprintf(buf, sizeof(buf),
                "kind=%s H=%.17g alpha=%.17g rho=%s T=%.17g n_terms=%ld seed=%llu "
                "rep=%llu",
                kind, H, alpha, drv.rho_name.c_str(), drv.horizon_T, drv.n_terms,
                static_cast<unsigned long long>(drv.seed),
                static_cast<unsigned long long>(drv.rep));
  return std::string(buf);
}

// Adds the Gaussian tail compensation: mean (M_n / T) k_t plus a centered
// Gaussian vector with covariance (V_n / T) * fBm inner product.
void apply_gaussian_tail(std::vector<double>& vals, const std::vector<double>& grid,
                         const KernelParams& kp, const TailPlan* plan,
                         double mean_rate, double noise_scale, std::uint64_t seed,
                         std::uint64_t rep) {
  TailPlan local;
  if (plan == nullptr) {
    local = make_tail_plan(kp, grid);
    plan = &local;
  } else if (plan->grid != grid || plan->H != kp.H || plan->alpha != kp.alpha) {
    throw std::runtime_error("tail plan does not match the grid or kernel");
  }
  const std::size_t m = grid.size(), mp = plan->m, off = m - mp;
  for (std::size_t j = 0; j < m; ++j) vals[j] += mean_rate * plan->k_t[j];
  rng::CounterRng rng(seed, rng::stream_id(rep, rng::kStreamTail));
  std::vector<double> xi(mp);
  for (std::size_t k = 0; k < mp; ++k) xi[k] = rng.next_normal();
  for (std::size_t r = 0; r < mp; ++r) {
    double acc = 0.0;
    for (std::size_t k = 0; k <= r; ++k) acc += plan->chol[r * mp + k] * xi[k];
    vals[off + r] += noise_scale * acc;
  }
}

// Shared jump accumulation: vals[j] += sum_i amp_i K(grid[j], times_i).  The
// per-term amplitude is supplied by a callable so the clipped, raw-stable and
// coupled variants share one kernel loop (and one fp association order).
template <typename AmpFn>
void accumulate_jumps(std::vector<double>& vals, const std::vector<double>& grid,
                      const KernelParams& kp, const SeriesDriver& drv, AmpFn&& amp) {
  const std::size_t m = grid.size();
  const long n = drv.n_terms;
  const bool levy = kp.regime == Regime::levy;
  std::vector<double> tpow(m, 0.0);
  if (!levy)
    for (std::size_t j = 0; j < m; ++j)
      tpow[j] = grid[j] > 0.0 ? std::pow(grid[j], kp.delta) : 0.0;
  for (long i = 0; i < n; ++i) {
    const double a = amp(i);
    if (a == 0.0) continue;
    const double ti = drv.times[i];
    for (std::size_t j = 0; j < m; ++j) {
      const double t = grid[j];
      if (ti > t || t <= 0.0) continue;
      vals[j] += levy ? a : a * tpow[j] * kernel_unit(kp, ti / t);
    }
  }
}

// sum_{i=1}^{n} a(i) with a(r) = m (alpha r / T)^{-1/alpha}.
double truncation_ladder_sum(const SeriesDriver& drv, const SeriesConstants& sc) {
  const double inva = 1.0 / drv.alpha;
  double s = 0.0;
  for (long i = 1; i <= drv.n_terms; ++i)
    s += std::pow(drv.alpha * static_cast<double>(i) / drv.horizon_T, -inva);
  return s * sc.m_rho;
}

Path clipped_series_path(const SeriesDriver& drv, const KernelParams& kp,
                         const SeriesConstants& sc, const std::vector<double>& grid,
                         TailMode tail_mode, const TailPlan* plan, PathKind kind) {
  validate_driver(drv, sc, grid);
  if (kp.alpha != drv.alpha)
    throw std::runtime_error("kernel parameters do not match the driver");
  const double T = drv.horizon_T, alpha = drv.alpha, inva = 1.0 / alpha;

  Path path;
  path.grid = grid;
  path.values.assign(grid.size(), 0.0);
  path.kind = kind;
  path.H = kp.H;
  path.alpha = alpha;
  path.seed = drv.seed;
  path.rep = drv.rep;

  accumulate_jumps(path.values, grid, kp, drv, [&](long i) {
    const double a_i = sc.m_rho * std::pow(alpha * drv.gammas[i] / T, -inva);
    const double z_i =
        drv.exps[i] * std::pow(drv.unifs[i], inva) * std::fabs(drv.vmarks[i]);
    return std::copysign(std::min(a_i, z_i), drv.vmarks[i]);
  });

  double drift_rate = sc.z_T;
  if (sc.k_prime != 0.0)
    drift_rate -= truncation_ladder_sum(drv, sc) * sc.k_prime / T;
  if (drift_rate != 0.0)
    for (std::size_t j = 0; j < grid.size(); ++j)
      path.values[j] += drift_rate * kernel_primitive(kp, grid[j]);

  if (tail_mode == TailMode::gaussian) {
    const double vn = tail::remainder_second_moment(drv, sc);
    const double mn = tail::remainder_mean(drv, sc);
    apply_gaussian_tail(path.values, grid, kp, plan, mn / T, std::sqrt(vn / T),
                        drv.seed, drv.rep);
  }

  path.tail_bound = sc.m_rho * std::pow(alpha * drv.gammas.back() / T, -inva);
  path.provenance =
      path_provenance(kind == PathKind::ts ? "ts" : "ftsm", kp.H, alpha, drv);
  return path;
}

}  // namespace

SeriesDriver make_driver(std::uint64_t seed, double T, long n_terms,
                         const InnerMeasure& rho, double alpha) {
  return make_driver(seed, 0, T, n_terms, rho, alpha);
}

SeriesDriver make_driver(std::uint64_t seed, std::uint64_t rep, double T, long n_terms,
                         const InnerMeasure& rho, double alpha) {
  if (!std::isfinite(T) || !(T > 0.0))
    throw std::invalid_argument("make_driver: horizon T must be positive");
  if (n_terms < 16)
    throw std::invalid_argument("make_driver: n_terms must be at least 16");

  SeriesDriver drv;
  drv.vatoms = v_sampling_weights(rho, alpha);  // validates alpha
  drv.n_terms = n_terms;
  drv.horizon_T = T;
  drv.alpha = alpha;
  drv.rho_name = rho.name();
  drv.seed = seed;
  drv.rep = rep;

  const auto n = static_cast<std::size_t>(n_terms);
  drv.gammas.resize(n);
  drv.exps.resize(n);
  drv.unifs.resize(n);
  drv.vmarks.resize(n);
  drv.times.resize(n);

  rng::CounterRng g_gamma(seed, rng::stream_id(rep, rng::kStreamGamma));
  double cum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cum += g_gamma.next_exp();
    drv.gammas[i] = cum;
  }
  rng::CounterRng g_exp(seed, rng::stream_id(rep, rng::kStreamExp));
  for (std::size_t i = 0; i < n; ++i) drv.exps[i] = g_exp.next_exp();
  rng::CounterRng g_unif(seed, rng::stream_id(rep, rng::kStreamUnif));
  for (std::size_t i = 0; i < n; ++i) drv.unifs[i] = g_unif.next_u01();
  rng::CounterRng g_v(seed, rng::stream_id(rep, rng::kStreamV));
  for (std::size_t i = 0; i < n; ++i) {
    const double u = g_v.next_u01();
    double acc = 0.0;
    double pick = drv.vatoms.back().first;
    for (const auto& [x, p] : drv.vatoms) {
      acc += p;
      if (u <= acc) {
        pick = x;
        break;
      }
    }
    drv.vmarks[i] = pick;
  }
  rng::CounterRng g_times(seed, rng::stream_id(rep, rng::kStreamTimes));
  for (std::size_t i = 0; i < n; ++i) drv.times[i] = g_times.next_u01() * T;
  return drv;
}

TailPlan make_tail_plan(const KernelParams& kp, const std::vector<double>& grid) {
  validate_grid(grid);
  TailPlan plan;
  plan.grid = grid;
  plan.H = kp.H;
  plan.alpha = kp.alpha;
  plan.k_t.resize(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j)
    plan.k_t[j] = kernel_primitive(kp, grid[j]);

  std::size_t off = 0;
  while (off < grid.size() && grid[off] <= 0.0) ++off;
  const std::size_t mp = grid.size() - off;
  plan.m = mp;
  plan.chol.assign(mp * mp, 0.0);
  const double twoG = 2.0 * kp.G;
  for (std::size_t i = 0; i < mp; ++i) {
    const double ti = grid[off + i];
    for (std::size_t j = 0; j <= i; ++j) {
      const double tj = grid[off + j];
      const double v = 0.5 * (std::pow(ti, twoG) + std::pow(tj, twoG) -
                              std::pow(std::fabs(ti - tj), twoG));
      plan.chol[i * mp + j] = v;
      plan.chol[j * mp + i] = v;
    }
  }
  if (mp > 0) cholesky_lower(plan.chol, mp);
  return plan;
}

Path simulate_ts(const SeriesDriver& drv, const SeriesConstants& sc,
                 const std::vector<double>& grid, TailMode tail, const TailPlan* plan) {
  const KernelParams kp = make_kernel_params(1.0 / drv.alpha, drv.alpha);
  return clipped_series_path(drv, kp, sc, grid, tail, plan, PathKind::ts);
}

Path simulate_ftsm(const SeriesDriver& drv, const KernelParams& kp,
                   const SeriesConstants& sc, const std::vector<double>& grid,
                   TailMode tail, const TailPlan* plan) {
  return clipped_series_path(drv, kp, sc, grid, tail, plan, PathKind::ftsm);
}

Path simulate_fsm(const SeriesDriver& drv, const KernelParams& kp,
                  const SeriesConstants& sc, const std::vector<double>& grid,
                  TailMode tail, const TailPlan* plan) {
  validate_driver(drv, sc, grid);
  if (kp.alpha != drv.alpha)
    throw std::runtime_error("kernel parameters do not match the driver");
  const bool symmetric = vatoms_symmetric(drv.vatoms);
  if (drv.alpha == 1.0 && !symmetric)
    throw std::invalid_argument("simulate_fsm: alpha = 1 requires a symmetric measure");
  const double T = drv.horizon_T, alpha = drv.alpha, inva = 1.0 / alpha;

  Path path;
  path.grid = grid;
  path.values.assign(grid.size(), 0.0);
  path.kind = PathKind::fsm;
  path.H = kp.H;
  path.alpha = alpha;
  path.seed = drv.seed;
  path.rep = drv.rep;

  accumulate_jumps(path.values, grid, kp, drv, [&](long i) {
    const double a_i = sc.m_rho * std::pow(alpha * drv.gammas[i] / T, -inva);
    return std::copysign(a_i, drv.vmarks[i]);
  });

  const bool centered = alpha > 1.0 && sc.k_prime != 0.0;
  if (centered) {
    const double zeta = special::riemann_zeta(inva);
    double rate = -truncation_ladder_sum(drv, sc) * sc.k_prime / T;
    rate += sc.m_rho * std::pow(alpha / T, -inva) * zeta * sc.k_prime / T;
    for (std::size_t j = 0; j < grid.size(); ++j)
      path.values[j] += rate * kernel_primitive(kp, grid[j]);
  }

  const double gamma_n = drv.gammas.back();
  const double a_n = sc.m_rho * std::pow(alpha * gamma_n / T, -inva);
  if (tail == TailMode::gaussian) {
    const double m_a = std::pow(sc.m_rho, alpha);
    const double vn = T * m_a * std::pow(a_n, 2.0 - alpha) / (2.0 - alpha);
    double mn = 0.0;
    if (sc.k_prime != 0.0) {
      const double q = inva;
      const double big_a = sc.m_rho * std::pow(alpha / T, -q);
      if (centered) {
        const double gap = tail::euler_maclaurin_gap(
            static_cast<double>(drv.n_terms), big_a, q);
        const double n_d = static_cast<double>(drv.n_terms);
        const double intpart =
            (q == 1.0) ? big_a * std::log(gamma_n / n_d)
                       : big_a * (std::pow(gamma_n, 1.0 - q) - std::pow(n_d, 1.0 - q)) /
                             (1.0 - q);
        mn = sc.k_prime * (gap - intpart);
      } else {
        // alpha < 1: the raw remainder sum converges absolutely; its mean is
        // k' \int_{Gamma_n}^infty a(r) dr.
        mn = sc.k_prime * big_a * std::pow(gamma_n, 1.0 - q) / (q - 1.0);
      }
    }
    apply_gaussian_tail(path.values, grid, kp, plan, mn / T, std::sqrt(vn / T),
                        drv.seed, drv.rep);
  }

  path.tail_bound = a_n;
  path.provenance = path_provenance("fsm", kp.H, alpha, drv);
  return path;
}

Path coupled_short_time_diff(const SeriesDriver& drv, const KernelParams& kp,
                             const SeriesConstants& sc, double h,
                             const std::vector<double>& grid) {
  validate_driver(drv, sc, grid);
  if (kp.alpha != drv.alpha)
    throw std::runtime_error("kernel parameters do not match the driver");
  if (!std::isfinite(h) || !(h > 0.0))
    throw std::invalid_argument("coupled_short_time_diff: h must be positive");
  if (!vatoms_symmetric(drv.vatoms))
    throw std::invalid_argument(
        "coupled_short_time_diff: requires a symmetric measure");
  const double T = drv.horizon_T, alpha = drv.alpha, inva = 1.0 / alpha;
  const double hpow = std::pow(h, -inva);

  Path path;
  path.grid = grid;
  path.values.assign(grid.size(), 0.0);
  path.kind = PathKind::coupled_diff;
  path.H = kp.H;
  path.alpha = alpha;
  path.seed = drv.seed;
  path.rep = drv.rep;

  accumulate_jumps(path.values, grid, kp, drv, [&](long i) {
    const double a_i = sc.m_rho * std::pow(alpha * drv.gammas[i] / T, -inva);
    const double z_i =
        drv.exps[i] * std::pow(drv.unifs[i], inva) * std::fabs(drv.vmarks[i]);
    const double w = std::max(a_i - hpow * z_i, 0.0);
    return std::copysign(w, drv.vmarks[i]);
  });

  path.tail_bound = sc.m_rho * std::pow(alpha * drv.gammas.back() / T, -inva);
  path.provenance = path_provenance("coupled_diff", kp.H, alpha, drv);
  return path;
}

Path simulate_fbm_approx(std::uint64_t seed, const KernelParams& kp, long N,
                         const std::vector<double>& grid) {
  return simulate_fbm_approx(seed, 0, kp, N, grid);
}

Path simulate_fbm_approx(std::uint64_t seed, std::uint64_t rep, const KernelParams& kp,
                         long N, const std::vector<double>& grid) {
  validate_grid(grid);
  if (N < 1) throw std::invalid_argument("simulate_fbm_approx: N must be positive");
  const double T = grid.back();
  if (!(T > 0.0))
    throw std::invalid_argument("simulate_fbm_approx: grid must reach a positive time");
  const double alpha = kp.alpha, inva = 1.0 / alpha;
  const double coeff =
      std::sqrt(T * (2.0 + alpha) / (2.0 * alpha * static_cast<double>(N)));

  Path path;
  path.grid = grid;
  path.values.assign(grid.size(), 0.0);
  path.kind = PathKind::fbm_approx;
  path.H = kp.H;
  path.alpha = alpha;
  path.seed = seed;
  path.rep = rep;

  rng::CounterRng g_exp(seed, rng::stream_id(rep, rng::kStreamExp));
  rng::CounterRng g_unif(seed, rng::stream_id(rep, rng::kStreamUnif));
  rng::CounterRng g_v(seed, rng::stream_id(rep, rng::kStreamV));
  rng::CounterRng g_times(seed, rng::stream_id(rep, rng::kStreamTimes));
  const bool levy = kp.regime == Regime::levy;
  const std::size_t m = grid.size();
  std::vector<double> tpow(m, 0.0);
  if (!levy)
    for (std::size_t j = 0; j < m; ++j)
      tpow[j] = grid[j] > 0.0 ? std::pow(grid[j], kp.delta) : 0.0;
  for (long i = 0; i < N; ++i) {
    const double e = g_exp.next_exp();
    const double u = g_unif.next_u01();
    const double eps = g_v.next_u01() <= 0.5 ? -1.0 : 1.0;
    const double ti = g_times.next_u01() * T;
    const double amp = coeff * e * std::pow(u, inva) * eps;
    for (std::size_t j = 0; j < m; ++j) {
      const double t = grid[j];
      if (ti > t || t <= 0.0) continue;
      path.values[j] += levy ? amp : amp * tpow[j] * kernel_unit(kp, ti / t);
    }
  }

  path.tail_bound = 0.0;
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "kind=fbm_approx H=%.17g alpha=%.17g N=%ld T=%.17g seed=%llu rep=%llu",
                kp.H, alpha, N, T, static_cast<unsigned long long>(seed),
                static_cast<unsigned long long>(rep));
  path.provenance = buf;
  return path;
}

namespace tail {

namespace {

// 1 - (1 + c) e^{-c} and c - 1 + e^{-c}, cancellation-free for small c.
double g2_fn(double c) {
  if (c < 1e-3)
    return c * c *
           (0.5 + c * (-1.0 / 3.0 + c * (0.125 + c * (-1.0 / 30.0 + c / 144.0))));
  return 1.0 - (1.0 + c) * std::exp(-c);
}

double gp_fn(double c) {
  if (c < 1e-3)
    return c * c *
           (0.5 + c * (-1.0 / 6.0 + c * (1.0 / 24.0 - c / 120.0)));
  return c - 1.0 + std::exp(-c);
}

}  // namespace

double expint_e1(double x) {
  if (!(x > 0.0)) throw std::invalid_argument("expint_e1: x must be positive");
  if (x <= 1.0) {
    // E1(x) = -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k k!)
    double sum = 0.0, term = 1.0;
    for (int k = 1; k <= 40; ++k) {
      term *= x / k;
      const double add = (k % 2 == 1 ? term : -term) / k;
      sum += add;
      if (std::fabs(add) < 1e-18 * (std::fabs(sum) + 1.0)) break;
    }
    return -special::euler_gamma - std::log(x) + sum;
  }
  if (x > 700.0) return 0.0;
  // Modified Lentz continued fraction: E1(x) = e^{-x} / (x + 1 - 1/(x + 3 - 4/(...)))
  const double tiny = 1e-300;
  double b = x + 1.0, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i <= 200; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (b + an * d);
    c = b + an / c;
    const double delta = c * d;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-15) break;
  }
  return std::exp(-x) * h;
}

double upper_gamma_neg(double s, double x) {
  if (!(s > -2.0) || !(s < 0.0))
    throw std::invalid_argument("upper_gamma_neg: s must lie in (-2, 0)");
  if (!(x > 0.0)) throw std::invalid_argument("upper_gamma_neg: x must be positive");
  if (x > 700.0) return 0.0;
  if (x < 4.0) {
    // Gamma(s, x) = Gamma(s) - x^s sum_k (-x)^k / (k! (s + k))
    double sum = 0.0, term = 1.0;  // term = (-x)^k / k!
    for (int k = 0; k <= 120; ++k) {
      const double add = term / (s + k);
      sum += add;
      term *= -x / (k + 1);
      if (std::fabs(term / (s + k + 1)) < 1e-18 * (std::fabs(sum) + 1e-30)) break;
    }
    return special::gamma_real(s) - std::pow(x, s) * sum;
  }
  // Modified Lentz for Gamma(s, x) = e^{-x} x^s / (x + 1 - s - 1(1-s)/(x + 3 - s - ...))
  const double tiny = 1e-300;
  double b = x + 1.0 - s, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i <= 300; ++i) {
    const double an = -static_cast<double>(i) * (i - s);
    b += 2.0;
    d = 1.0 / (b + an * d);
    c = b + an / c;
    const double delta = c * d;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-15) break;
  }
  return std::exp(-x + s * std::log(x)) * h;
}

double eplus(double a, double b, double alpha) {
  if (!(b > 0.0)) throw std::invalid_argument("eplus: b must be positive");
  if (!(alpha > 0.0) || !(alpha < 2.0))
    throw std::invalid_argument("eplus: alpha must lie in (0, 2)");
  if (!(a >= 0.0)) throw std::invalid_argument("eplus: a must be nonnegative");
  if (a == 0.0) return 0.0;
  const double y = a / b;
  const double pref = alpha * b / (alpha + 1.0);
  double bracket;
  if (alpha == 1.0) {
    bracket = gp_fn(y) + y - y * std::exp(-y) + y * y * expint_e1(y);
  } else if (y >= 0.5) {
    const double g = y > 700.0 ? 0.0 : upper_gamma_neg(-alpha, y);
    bracket = gp_fn(y) + y / alpha - std::pow(y, alpha + 1.0) * g;
  } else {
    // Cancellation-free small-y series:
    //   -Gamma(-alpha) y^{alpha+1} + sum_{k>=2} (-y)^k [1/k! - 1/((k-1)!(k-1-alpha))]
    bracket = -special::gamma_real(-alpha) * std::pow(y, alpha + 1.0);
    double powy = y, kfact = 1.0, km1fact = 1.0;  // powy = y^k building from k=2
    for (int k = 2; k <= 60; ++k) {
      powy *= y;          // y^k
      km1fact = kfact;    // (k-1)!
      kfact *= k;         // k!
      const double ck = 1.0 / kfact - 1.0 / (km1fact * (k - 1.0 - alpha));
      const double add = (k % 2 == 0 ? powy : -powy) * ck;
      bracket += add;
      if (std::fabs(add) < 1e-18 * (std::fabs(bracket) + 1e-300)) break;
    }
  }
  return pref * bracket;
}

double emin2(double a, double b, double alpha) {
  if (!(b > 0.0)) throw std::invalid_argument("emin2: b must be positive");
  if (!(alpha > 0.0) || !(alpha < 2.0))
    throw std::invalid_argument("emin2: alpha must lie in (0, 2)");
  if (!(a >= 0.0)) throw std::invalid_argument("emin2: a must be nonnegative");
  if (a == 0.0) return 0.0;
  const double y = a / b;
  const double pref = 2.0 * alpha * b * b / (alpha + 2.0);
  double bracket;
  if (alpha == 1.0) {
    bracket = g2_fn(y) + y * y * std::exp(-y) - y * y * y * expint_e1(y);
  } else if (y >= 0.5) {
    const double g = y > 700.0 ? 0.0 : upper_gamma_neg(-alpha, y);
    bracket = g2_fn(y) + std::pow(y, alpha + 2.0) * g;
  } else {
    // Gamma(-alpha) y^{alpha+2} + sum_{k>=2} (-y)^k [(k-1)/k! - 1/((k-2)!(k-2-alpha))]
    bracket = special::gamma_real(-alpha) * std::pow(y, alpha + 2.0);
    double powy = y, kfact = 1.0;  // kfact = (k-1)! at loop entry
    for (int k = 2; k <= 60; ++k) {
      powy *= y;                                     // y^k
      kfact *= k;                                    // k!
      const double fkm2 = kfact / (k * (k - 1.0));   // (k-2)!
      const double ck = (k - 1.0) / kfact - 1.0 / (fkm2 * (k - 2.0 - alpha));
      const double add = (k % 2 == 0 ? powy : -powy) * ck;
      bracket += add;
      if (std::fabs(add) < 1e-18 * (std::fabs(bracket) + 1e-300)) break;
    }
  }
  return pref * bracket;
}

double remainder_second_moment(const SeriesDriver& drv, const SeriesConstants& sc) {
  const double alpha = drv.alpha, T = drv.horizon_T;
  const double m_a = std::pow(sc.m_rho, alpha);
  const double a_n = sc.m_rho * std::pow(alpha * drv.gammas.back() / T, -1.0 / alpha);
  double total = 0.0;
  for (const auto& [x, p] : drv.vatoms) {
    const double b = std::fabs(x);
    auto f = [&](double u) {
      const double a = a_n * u;
      return emin2(a, b, alpha) * std::pow(a, -alpha - 1.0) * a_n;
    };
    const double scale = emin2(a_n, b, alpha) * std::pow(a_n, -alpha);
    total += p * quad::unit_power(f, 1.0 - alpha, 0.0, 1e-10 * (scale + 1e-300));
  }
  return T * m_a * total;
}

double remainder_mean(const SeriesDriver& drv, const SeriesConstants& sc) {
  const double alpha = drv.alpha, T = drv.horizon_T;
  const double m_a = std::pow(sc.m_rho, alpha);
  const double gamma_n = drv.gammas.back();
  const double a_n = sc.m_rho * std::pow(alpha * gamma_n / T, -1.0 / alpha);
  const double e0 = alpha > 1.0 ? 1.0 - alpha : (alpha == 1.0 ? -0.25 : 0.0);
  double inner = 0.0;
  for (const auto& [x, p] : drv.vatoms) {
    const double b = std::fabs(x);
    const double sgn = x > 0.0 ? 1.0 : -1.0;
    auto f = [&](double u) {
      const double a = a_n * u;
      return eplus(a, b, alpha) * std::pow(a, -alpha - 1.0) * a_n;
    };
    const double scale = eplus(a_n, b, alpha) * std::pow(a_n, -alpha);
    inner += p * sgn * quad::unit_power(f, e0, 0.0, 1e-10 * (scale + 1e-300));
  }
  double m_n = -T * m_a * inner;
  if (sc.k_prime != 0.0) {
    const double q = 1.0 / alpha;
    const double big_a = sc.m_rho * std::pow(alpha / T, -q);
    const double n_d = static_cast<double>(drv.n_terms);
    const double gap = euler_maclaurin_gap(n_d, big_a, q);
    const double intpart =
        (q == 1.0) ? big_a * std::log(gamma_n / n_d)
                   : big_a * (std::pow(gamma_n, 1.0 - q) - std::pow(n_d, 1.0 - q)) /
                         (1.0 - q);
    m_n += sc.k_prime * (gap - intpart);
  }
  return m_n;
}

double euler_maclaurin_gap(double n, double A, double q) {
  if (!(n >= 1.0)) throw std::invalid_argument("euler_maclaurin_gap: n must be >= 1");
  const double np1 = n + 1.0;
  const double integral = (q == 1.0)
                              ? A * std::log1p(1.0 / n)
                              : A * (std::pow(np1, 1.0 - q) - std::pow(n, 1.0 - q)) /
                                    (1.0 - q);
  const double a1 = A * std::pow(np1, -q);
  const double d1 = -q * A * std::pow(np1, -q - 1.0);
  const double d3 = -q * (q + 1.0) * (q + 2.0) * A * std::pow(np1, -q - 3.0);
  return integral - 0.5 * a1 + d1 / 12.0 - d3 / 720.0;
}

}  // namespace tail

}  // namespace ftsm
