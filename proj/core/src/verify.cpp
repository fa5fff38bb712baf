#include "ftsm/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "ftsm/charfn.hpp"
#include "ftsm/rng.hpp"
#include "ftsm/stats.hpp"

namespace ftsm {

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

// Static-chunked parallel loop.  Each index writes only its own slots, so the
// results are byte-identical for every thread count.
void parallel_for(long n, int threads, const std::function<void(long)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (long i = 0; i < n; ++i) fn(i);
    return;
  }
  const int nt = static_cast<int>(std::min<long>(threads, n));
  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::mutex err_mutex;
  pool.reserve(static_cast<std::size_t>(nt));
  for (int k = 0; k < nt; ++k) {
    const long lo = n * k / nt, hi = n * (k + 1) / nt;
    pool.emplace_back([&, lo, hi]() {
      try {
        for (long i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> hold(err_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

int resolve_threads(const VerifyOptions& opt) {
  return opt.threads >= 1 ? opt.threads : default_threads();
}

std::string format_params(const KernelParams& kp, const InnerMeasure& rho,
                          const char* extra) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "H=%.17g alpha=%.17g rho=%s%s%s", kp.H, kp.alpha,
                rho.name().c_str(), extra[0] ? " " : "", extra);
  return std::string(buf);
}

// Simulates the marginal values of `kind` at the times in `grid` for reps
// 0..n_reps-1; row r of the result is replication r.
std::vector<double> simulate_matrix(PathKind kind, const KernelParams& kp,
                                    const InnerMeasure& rho,
                                    const std::vector<double>& grid, long n_reps,
                                    std::uint64_t seed, const VerifyOptions& opt) {
  const double T = grid.back();
  const SeriesConstants sc = series_constants(rho, kp.alpha, T);
  const TailPlan plan = make_tail_plan(kind == PathKind::ts
                                           ? make_kernel_params(1.0 / kp.alpha, kp.alpha)
                                           : kp,
                                       grid);
  const std::size_t m = grid.size();
  std::vector<double> out(static_cast<std::size_t>(n_reps) * m);
  parallel_for(n_reps, resolve_threads(opt), [&](long r) {
    const SeriesDriver drv =
        make_driver(seed, static_cast<std::uint64_t>(r), T, opt.n_terms, rho, kp.alpha);
    Path p;
    switch (kind) {
      case PathKind::ts:
        p = simulate_ts(drv, sc, grid, TailMode::gaussian, &plan);
        break;
      case PathKind::ftsm:
        p = simulate_ftsm(drv, kp, sc, grid, TailMode::gaussian, &plan);
        break;
      case PathKind::fsm:
        p = simulate_fsm(drv, kp, sc, grid, TailMode::gaussian, &plan);
        break;
      default:
        throw std::invalid_argument("simulate_matrix: unsupported path kind");
    }
    for (std::size_t j = 0; j < m; ++j) out[static_cast<std::size_t>(r) * m + j] = p.values[j];
  });
  return out;
}

// Bootstrap standard error of a statistic of an i.i.d. sample, B = 200
// multinomial resamples on dedicated RNG streams.
double bootstrap_se(const std::vector<double>& x, std::uint64_t seed,
                    const std::function<double(const std::vector<double>&)>& stat) {
  constexpr int kB = 200;
  const std::size_t n = x.size();
  std::vector<double> stats_b(kB);
  std::vector<double> resample(n);
  for (int b = 0; b < kB; ++b) {
    rng::CounterRng rng(seed, rng::stream_id(static_cast<std::uint64_t>(b), rng::kStreamBootstrap));
    for (std::size_t i = 0; i < n; ++i) {
      const auto idx = static_cast<std::size_t>(rng.next_u01() * static_cast<double>(n));
      resample[i] = x[idx >= n ? n - 1 : idx];
    }
    stats_b[b] = stat(resample);
  }
  const stats::Moments mm = stats::moments(stats_b);
  return std::sqrt(stats::variance(mm));
}

// Weighted OLS slope standard error from per-point relative errors.
double slope_se_from_rel(const std::vector<double>& lx,
                         const std::vector<double>& rel_se) {
  const std::size_t n = lx.size();
  double mx = 0;
  for (double v : lx) mx += v;
  mx /= static_cast<double>(n);
  double sxx = 0;
  for (double v : lx) sxx += (v - mx) * (v - mx);
  double var = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double c = (lx[k] - mx) / sxx;
    var += c * c * rel_se[k] * rel_se[k];
  }
  return std::sqrt(var);
}

}  // namespace

int default_threads() {
  if (const char* env = std::getenv("FTSM_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 4096) return static_cast<int>(v);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

std::vector<VerificationReport> check_covariance(const KernelParams& kp,
                                                 const InnerMeasure& rho,
                                                 const std::vector<double>& grid,
                                                 long n_reps, std::uint64_t seed,
                                                 const VerifyOptions& opt) {
  if (n_reps < 2) throw std::invalid_argument("check_covariance: n_reps must be >= 2");
  const auto t0 = clock_type::now();
  const std::size_t m = grid.size();
  const std::vector<double> x =
      simulate_matrix(PathKind::ftsm, kp, rho, grid, n_reps, seed, opt);
  const auto nr = static_cast<std::size_t>(n_reps);

  std::vector<double> mu(m);
  std::vector<double> col(nr);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t r = 0; r < nr; ++r) col[r] = x[r * m + j];
    mu[j] = stats::tree_mean(col);
  }

  const double ts_var = ts_variance(rho, kp.alpha);
  const int family = static_cast<int>(m * (m + 1) / 2);
  const double z_star = stats::bonferroni_z(opt.base_z, family);

  std::vector<VerificationReport> reports;
  reports.reserve(m * (m + 1) / 2);
  std::vector<double> prod(nr);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      for (std::size_t r = 0; r < nr; ++r)
        prod[r] = (x[r * m + i] - mu[i]) * (x[r * m + j] - mu[j]);
      const stats::Moments mm = stats::moments(prod);
      const double est = mm.mean * static_cast<double>(nr) / static_cast<double>(nr - 1);
      const double se = std::sqrt(mm.m2 / static_cast<double>(nr - 1));
      const double theo = grid[i] > 0.0 && grid[j] > 0.0
                              ? ts_var * inner_product(kp, grid[i], grid[j])
                              : 0.0;
      VerificationReport rep;
      char nb[64];
      std::snprintf(nb, sizeof(nb), "cov[t=%g,s=%g]", grid[i], grid[j]);
      rep.name = nb;
      rep.theoretical = theo;
      rep.estimate = est;
      rep.std_error = se;
      rep.z_score = se > 0.0 ? (est - theo) / se : 0.0;
      rep.passed = se > 0.0 ? std::fabs(rep.z_score) <= z_star : est == theo;
      rep.n_reps = n_reps;
      rep.seed = seed;
      rep.params = format_params(kp, rho, "check=covariance");
      reports.push_back(std::move(rep));
    }
  }
  const double elapsed = seconds_since(t0);
  for (auto& r : reports) r.runtime_s = elapsed;
  return reports;
}

std::vector<VerificationReport> check_quadratic_variation(const KernelParams& kp,
                                                          const InnerMeasure& rho,
                                                          double T, long N_max,
                                                          long n_reps,
                                                          std::uint64_t seed,
                                                          const VerifyOptions& opt) {
  if (kp.regime != Regime::long_memory)
    throw std::invalid_argument(
        "check_quadratic_variation: requires the long-memory regime");
  if (!(T > 0.0)) throw std::invalid_argument("check_quadratic_variation: T must be positive");
  if (N_max < 16 || (N_max & (N_max - 1)) != 0)
    throw std::invalid_argument(
        "check_quadratic_variation: N_max must be a power of two, >= 16");
  if (n_reps < 8)
    throw std::invalid_argument("check_quadratic_variation: n_reps must be >= 8");
  const auto t0 = clock_type::now();

  std::vector<long> ns;
  for (long n = 16; n <= N_max; n *= 2) ns.push_back(n);
  const auto nn = ns.size();

  std::vector<double> grid(static_cast<std::size_t>(N_max));
  for (long k = 1; k <= N_max; ++k)
    grid[static_cast<std::size_t>(k - 1)] = T * static_cast<double>(k) / static_cast<double>(N_max);

  const SeriesConstants sc = series_constants(rho, kp.alpha, T);
  const TailPlan plan = make_tail_plan(kp, grid);
  const auto nr = static_cast<std::size_t>(n_reps);
  std::vector<double> qv(nr * nn);
  parallel_for(n_reps, resolve_threads(opt), [&](long r) {
    const SeriesDriver drv =
        make_driver(seed, static_cast<std::uint64_t>(r), T, opt.n_terms, rho, kp.alpha);
    const Path p = simulate_ftsm(drv, kp, sc, grid, TailMode::gaussian, &plan);
    for (std::size_t a = 0; a < nn; ++a) {
      const long stride = N_max / ns[a];
      double acc = 0.0, prev = 0.0;
      for (long k = 1; k <= ns[a]; ++k) {
        const double cur = p.values[static_cast<std::size_t>(k * stride - 1)];
        const double d = cur - prev;
        acc += d * d;
        prev = cur;
      }
      qv[static_cast<std::size_t>(r) * nn + a] = acc;
    }
  });

  const double ts_var = ts_variance(rho, kp.alpha);
  const double two_g = 2.0 * kp.G;
  const double z_star = stats::bonferroni_z(opt.base_z, static_cast<int>(nn));

  std::vector<VerificationReport> reports;
  std::vector<double> lx(nn), ly(nn), rel(nn);
  std::vector<double> col(nr);
  for (std::size_t a = 0; a < nn; ++a) {
    for (std::size_t r = 0; r < nr; ++r) col[r] = qv[r * nn + a];
    const stats::Moments mm = stats::moments(col);
    const double se = std::sqrt(mm.m2 / static_cast<double>(nr - 1));
    const double theo = ts_var * std::pow(T, two_g) *
                        std::pow(static_cast<double>(ns[a]), 1.0 - two_g);
    VerificationReport rep;
    char nb[48];
    std::snprintf(nb, sizeof(nb), "qv[N=%ld]", ns[a]);
    rep.name = nb;
    rep.theoretical = theo;
    rep.estimate = mm.mean;
    rep.std_error = se;
    rep.z_score = (mm.mean - theo) / se;
    rep.passed = std::fabs(rep.z_score) <= z_star;
    rep.n_reps = n_reps;
    rep.seed = seed;
    rep.params = format_params(kp, rho, "check=qv");
    reports.push_back(std::move(rep));
    lx[a] = std::log(static_cast<double>(ns[a]));
    ly[a] = std::log(mm.mean);
    rel[a] = se / mm.mean;
  }

  const auto [slope, fit_se] = stats::ols_slope(lx, ly);
  (void)fit_se;
  VerificationReport sl;
  sl.name = "qv_slope";
  sl.theoretical = 1.0 - two_g;
  sl.estimate = slope;
  sl.std_error = slope_se_from_rel(lx, rel);
  sl.z_score = (slope - sl.theoretical) / sl.std_error;
  sl.passed = std::fabs(slope - sl.theoretical) <= opt.slope_tol;
  sl.n_reps = n_reps;
  sl.seed = seed;
  sl.params = format_params(kp, rho, "check=qv");
  reports.push_back(std::move(sl));

  const double elapsed = seconds_since(t0);
  for (auto& r : reports) r.runtime_s = elapsed;
  return reports;
}

std::vector<VerificationReport> check_lrd_slope(const KernelParams& kp,
                                                const InnerMeasure& rho, double h,
                                                double t_max, long n_reps,
                                                std::uint64_t seed,
                                                const VerifyOptions& opt) {
  if (kp.regime == Regime::levy)
    throw std::invalid_argument(
        "check_lrd_slope: increment covariance vanishes in the levy regime");
  if (!(h > 0.0)) throw std::invalid_argument("check_lrd_slope: h must be positive");
  if (!(t_max >= 40.0 * h))
    throw std::invalid_argument("check_lrd_slope: t_max must be >= 40 h");
  const auto t0 = clock_type::now();

  const double ts_var = ts_variance(rho, kp.alpha);
  const double two_g = 2.0 * kp.G;
  auto f_theo = [&](double t) {
    return 0.5 * ts_var *
           (std::pow(t + h, two_g) - 2.0 * std::pow(t, two_g) + std::pow(t - h, two_g));
  };

  constexpr int kPts = 17;
  std::vector<double> lx(kPts), ly(kPts);
  const double lo = 10.0 * h;
  for (int k = 0; k < kPts; ++k) {
    const double t = lo * std::pow(t_max / lo, static_cast<double>(k) / (kPts - 1));
    lx[k] = std::log(t);
    ly[k] = std::log(std::fabs(f_theo(t)));
  }
  const auto [slope, fit_se] = stats::ols_slope(lx, ly);

  std::vector<VerificationReport> reports;
  VerificationReport sl;
  sl.name = "lrd_slope";
  sl.theoretical = two_g - 2.0;
  sl.estimate = slope;
  sl.std_error = fit_se;
  sl.z_score = fit_se > 0.0 ? (slope - sl.theoretical) / fit_se : 0.0;
  sl.passed = std::fabs(slope - sl.theoretical) <= opt.lrd_slope_tol;
  sl.n_reps = 0;
  sl.seed = seed;
  sl.params = format_params(kp, rho, "check=lrd");
  reports.push_back(std::move(sl));

  if (n_reps >= 100) {
    const std::vector<double> offsets = {2.0 * h, 8.0 * h, 32.0 * h};
    const double z_star = stats::bonferroni_z(opt.base_z, static_cast<int>(offsets.size()));
    for (double t : offsets) {
      if (t + h > t_max) break;
      const std::vector<double> grid = {h, t, t + h};
      const std::vector<double> x =
          simulate_matrix(PathKind::ftsm, kp, rho, grid, n_reps, seed, opt);
      const auto nr = static_cast<std::size_t>(n_reps);
      std::vector<double> prod(nr);
      for (std::size_t r = 0; r < nr; ++r)
        prod[r] = x[r * 3] * (x[r * 3 + 2] - x[r * 3 + 1]);
      const stats::Moments mm = stats::moments(prod);
      const double se = std::sqrt(mm.m2 / static_cast<double>(nr - 1));
      VerificationReport rep;
      char nb[48];
      std::snprintf(nb, sizeof(nb), "lrd_cov[t=%g]", t);
      rep.name = nb;
      rep.theoretical = f_theo(t);
      rep.estimate = mm.mean;
      rep.std_error = se;
      rep.z_score = (mm.mean - rep.theoretical) / se;
      rep.passed = std::fabs(rep.z_score) <= z_star;
      rep.n_reps = n_reps;
      rep.seed = seed;
      rep.params = format_params(kp, rho, "check=lrd");
      reports.push_back(std::move(rep));
    }
  }

  const double elapsed = seconds_since(t0);
  for (auto& r : reports) r.runtime_s = elapsed;
  return reports;
}

std::vector<VerificationReport> check_long_time_gaussianity(const KernelParams& kp,
                                                            const InnerMeasure& rho,
                                                            double h, long n_reps,
                                                            std::uint64_t seed,
                                                            const VerifyOptions& opt) {
  if (!(h > 0.0))
    throw std::invalid_argument("check_long_time_gaussianity: h must be positive");
  if (n_reps < 16)
    throw std::invalid_argument("check_long_time_gaussianity: n_reps must be >= 16");
  const auto t0 = clock_type::now();

  const std::vector<double> grid = {h};
  std::vector<double> x =
      simulate_matrix(PathKind::ftsm, kp, rho, grid, n_reps, seed, opt);
  const double scale = std::pow(h, -kp.G);
  for (double& v : x) v *= scale;

  const stats::Moments mm = stats::moments(x);
  const auto nr = static_cast<std::size_t>(n_reps);
  const double ts_var = ts_variance(rho, kp.alpha);

  char extra[64];
  std::snprintf(extra, sizeof(extra), "check=gauss h=%.17g", h);
  const std::string params = format_params(kp, rho, extra);

  VerificationReport var_rep;
  var_rep.name = "gauss_variance";
  var_rep.theoretical = ts_var;
  var_rep.estimate = mm.m2 * static_cast<double>(nr) / static_cast<double>(nr - 1);
  var_rep.std_error = std::sqrt((mm.m4 - mm.m2 * mm.m2) / static_cast<double>(nr));
  var_rep.z_score = (var_rep.estimate - ts_var) / var_rep.std_error;
  var_rep.passed = std::fabs(var_rep.z_score) <= opt.base_z;

  VerificationReport skew_rep;
  skew_rep.name = "gauss_skewness";
  skew_rep.theoretical = 0.0;
  skew_rep.estimate = stats::skewness(mm);
  skew_rep.std_error =
      nr >= 5000 ? stats::skewness_se(nr)
                 : bootstrap_se(x, seed, [](const std::vector<double>& v) {
                     return stats::skewness(stats::moments(v));
                   });
  skew_rep.z_score = skew_rep.estimate / skew_rep.std_error;
  skew_rep.passed = std::fabs(skew_rep.z_score) <= opt.base_z;

  VerificationReport kurt_rep;
  kurt_rep.name = "gauss_kurtosis";
  kurt_rep.theoretical = 0.0;
  kurt_rep.estimate = stats::excess_kurtosis(mm);
  kurt_rep.std_error =
      nr >= 5000 ? stats::kurtosis_se(nr)
                 : bootstrap_se(x, seed, [](const std::vector<double>& v) {
                     return stats::excess_kurtosis(stats::moments(v));
                   });
  kurt_rep.z_score = kurt_rep.estimate / kurt_rep.std_error;
  kurt_rep.passed = std::fabs(kurt_rep.z_score) <= opt.base_z;

  std::vector<VerificationReport> reports = {var_rep, skew_rep, kurt_rep};
  const double elapsed = seconds_since(t0);
  for (auto& r : reports) {
    r.n_reps = n_reps;
    r.seed = seed;
    r.params = params;
    r.runtime_s = elapsed;
  }
  return reports;
}

VerificationReport check_empirical_cf(PathKind kind, const KernelParams& kp,
                                      const InnerMeasure& rho, double t,
                                      const std::vector<double>& y_grid, long n_reps,
                                      std::uint64_t seed, const VerifyOptions& opt) {
  if (!(t > 0.0)) throw std::invalid_argument("check_empirical_cf: t must be positive");
  if (y_grid.empty())
    throw std::invalid_argument("check_empirical_cf: y_grid must be nonempty");
  if (n_reps < 100)
    throw std::invalid_argument("check_empirical_cf: n_reps must be >= 100");
  const auto t0 = clock_type::now();

  const std::vector<double> grid = {t};
  const std::vector<double> x =
      simulate_matrix(kind, kp, rho, grid, n_reps, seed, opt);
  const auto nr = static_cast<std::size_t>(n_reps);
  const std::size_t ny = y_grid.size();

  // Theoretical CF per y.
  std::vector<std::complex<double>> cf_theo(ny);
  for (std::size_t q = 0; q < ny; ++q) {
    switch (kind) {
      case PathKind::ts:
        cf_theo[q] = cf_ts(y_grid[q], t, rho, kp.alpha);
        break;
      case PathKind::ftsm:
        cf_theo[q] = cf_ftsm(y_grid[q], t, kp, rho);
        break;
      case PathKind::fsm:
        cf_theo[q] = cf_fsm(y_grid[q], t, kp, rho);
        break;
      default:
        throw std::invalid_argument("check_empirical_cf: unsupported path kind");
    }
  }

  // Per-replication phases, row-major nr x ny.
  std::vector<double> cre(nr * ny), cim(nr * ny);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t q = 0; q < ny; ++q) {
      cre[r * ny + q] = std::cos(y_grid[q] * x[r]);
      cim[r * ny + q] = std::sin(y_grid[q] * x[r]);
    }

  std::vector<double> col(nr);
  double sup = 0.0;
  for (std::size_t q = 0; q < ny; ++q) {
    for (std::size_t r = 0; r < nr; ++r) col[r] = cre[r * ny + q];
    const double er = stats::tree_mean(col);
    for (std::size_t r = 0; r < nr; ++r) col[r] = cim[r * ny + q];
    const double ei = stats::tree_mean(col);
    sup = std::max(sup, std::abs(std::complex<double>(er, ei) - cf_theo[q]));
  }

  // Bootstrap the sup statistic.
  constexpr int kB = 200;
  std::vector<double> sup_b(kB);
  std::vector<double> acc_re(ny), acc_im(ny);
  for (int b = 0; b < kB; ++b) {
    rng::CounterRng rng(seed, rng::stream_id(static_cast<std::uint64_t>(b), rng::kStreamBootstrap));
    std::fill(acc_re.begin(), acc_re.end(), 0.0);
    std::fill(acc_im.begin(), acc_im.end(), 0.0);
    for (std::size_t i = 0; i < nr; ++i) {
      auto idx = static_cast<std::size_t>(rng.next_u01() * static_cast<double>(nr));
      if (idx >= nr) idx = nr - 1;
      const double* row_re = &cre[idx * ny];
      const double* row_im = &cim[idx * ny];
      for (std::size_t q = 0; q < ny; ++q) {
        acc_re[q] += row_re[q];
        acc_im[q] += row_im[q];
      }
    }
    double s = 0.0;
    for (std::size_t q = 0; q < ny; ++q) {
      const std::complex<double> e(acc_re[q] / static_cast<double>(nr),
                                   acc_im[q] / static_cast<double>(nr));
      s = std::max(s, std::abs(e - cf_theo[q]));
    }
    sup_b[b] = s;
  }
  const stats::Moments bm = stats::moments(sup_b);

  VerificationReport rep;
  const char* kind_name = kind == PathKind::ts ? "ts" : (kind == PathKind::ftsm ? "ftsm" : "fsm");
  char nb[48];
  std::snprintf(nb, sizeof(nb), "ecf[%s]", kind_name);
  rep.name = nb;
  rep.theoretical = 0.0;
  rep.estimate = sup;
  rep.std_error = std::sqrt(stats::variance(bm));
  rep.z_score = rep.std_error > 0.0 ? sup / rep.std_error : 0.0;
  rep.passed = sup <= opt.cf_sup_threshold;
  rep.n_reps = n_reps;
  rep.seed = seed;
  char extra[64];
  std::snprintf(extra, sizeof(extra), "check=ecf t=%.17g", t);
  rep.params = format_params(kp, rho, extra);
  rep.runtime_s = seconds_since(t0);
  return rep;
}

VerificationReport estimate_holder_roughness(const std::vector<Path>& paths) {
  if (paths.empty())
    throw std::invalid_argument("estimate_holder_roughness: no paths given");
  const KernelParams kp = make_kernel_params(paths[0].H, paths[0].alpha);
  if (kp.regime == Regime::rough)
    throw std::invalid_argument(
        "estimate_holder_roughness: rough-regime paths are rejected (the dyadic "
        "variogram saturates below the levy scaling)");
  const std::vector<double>& grid = paths[0].grid;
  const std::size_t n = grid.size();
  if (n < 16)
    throw std::invalid_argument("estimate_holder_roughness: grid too coarse");
  const double dt = grid[0];
  if (!(dt > 0.0))
    throw std::invalid_argument("estimate_holder_roughness: grid must start after 0");
  for (std::size_t k = 0; k < n; ++k) {
    const double expect = dt * static_cast<double>(k + 1);
    if (std::fabs(grid[k] - expect) > 1e-9 * expect)
      throw std::invalid_argument("estimate_holder_roughness: grid must be uniform");
  }
  for (const Path& p : paths)
    if (p.grid != grid || p.H != paths[0].H || p.alpha != paths[0].alpha)
      throw std::invalid_argument("estimate_holder_roughness: paths are inhomogeneous");
  const auto t0 = clock_type::now();

  std::size_t jmax = 0;
  while ((n >> (jmax + 1)) >= 8) ++jmax;
  const std::size_t nl = jmax + 1;

  const std::size_t np = paths.size();
  std::vector<double> vgram(np * nl);
  for (std::size_t p = 0; p < np; ++p) {
    const std::vector<double>& v = paths[p].values;
    for (std::size_t j = 0; j < nl; ++j) {
      const std::size_t step = static_cast<std::size_t>(1) << j;
      const std::size_t cnt = n / step;
      double acc = 0.0, prev = 0.0;
      for (std::size_t k = 1; k <= cnt; ++k) {
        const double cur = v[k * step - 1];
        const double d = cur - prev;
        acc += d * d;
        prev = cur;
      }
      vgram[p * nl + j] = acc / static_cast<double>(cnt);
    }
  }

  std::vector<double> lx(nl), ly(nl), rel(nl);
  std::vector<double> col(np);
  for (std::size_t j = 0; j < nl; ++j) {
    for (std::size_t p = 0; p < np; ++p) col[p] = vgram[p * nl + j];
    const stats::Moments mm = stats::moments(col);
    lx[j] = std::log(dt * static_cast<double>(static_cast<std::size_t>(1) << j));
    ly[j] = std::log(mm.mean);
    rel[j] = np > 1 ? std::sqrt(mm.m2 / static_cast<double>(np - 1)) / mm.mean : 0.0;
  }
  const auto [slope, fit_se] = stats::ols_slope(lx, ly);
  (void)fit_se;

  VerificationReport rep;
  rep.name = "holder_slope";
  rep.theoretical = 2.0 * kp.G;
  rep.estimate = slope;
  rep.std_error = np > 1 ? slope_se_from_rel(lx, rel) : 0.0;
  rep.z_score = rep.std_error > 0.0 ? (slope - rep.theoretical) / rep.std_error : 0.0;
  rep.passed = std::fabs(slope - rep.theoretical) <= 0.05;
  rep.n_reps = static_cast<long>(np);
  rep.seed = paths[0].seed;
  char pb[96];
  std::snprintf(pb, sizeof(pb), "H=%.17g alpha=%.17g check=holder", kp.H, kp.alpha);
  rep.params = pb;
  rep.runtime_s = seconds_since(t0);
  return rep;
}

}  // namespace ftsm
