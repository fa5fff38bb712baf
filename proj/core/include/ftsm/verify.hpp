#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ftsm/kernel.hpp"
#include "ftsm/measure.hpp"
#include "ftsm/series.hpp"

namespace ftsm {

// One statistical or analytic consistency check.  `estimate` is always a
// replication-level quantity with a matching `std_error`; `z_score` compares
// against `theoretical`.  Family-wise thresholds are resolved before `passed`
// is set, so reports are self-contained.
struct VerificationReport {
  std::string name;
  double theoretical = 0.0;
  double estimate = 0.0;
  double std_error = 0.0;
  double z_score = 0.0;
  bool passed = false;
  long n_reps = 0;
  double runtime_s = 0.0;
  std::uint64_t seed = 0;
  std::string params;
};

struct VerifyOptions {
  long n_terms = 2000;          // series truncation per replication
  int threads = 0;              // 0: FTSM_THREADS env, else hardware count
  double base_z = 4.0;          // per-test z threshold before correction
  double cf_sup_threshold = 0.02;
  double slope_tol = 0.05;      // QV slope tolerance
  double lrd_slope_tol = 0.1;
};

// Thread count resolution (FTSM_THREADS env override).
int default_threads();

// Pairwise covariance of the simulated fTSm marginals on `grid` against
// ts_variance * (t^2G + s^2G - |t-s|^2G)/2; one report per unordered pair.
std::vector<VerificationReport> check_covariance(const KernelParams& kp,
                                                 const InnerMeasure& rho,
                                                 const std::vector<double>& grid,
                                                 long n_reps, std::uint64_t seed,
                                                 const VerifyOptions& opt = {});

// Dyadic quadratic variation scaling: E QV_N = ts_variance T^2G N^(1-2G).
// Reports one entry per dyadic N in {16, ..., N_max} plus the fitted log-log
// slope against 1 - 2G.  Long-memory regime only.
std::vector<VerificationReport> check_quadratic_variation(const KernelParams& kp,
                                                          const InnerMeasure& rho,
                                                          double T, long N_max,
                                                          long n_reps,
                                                          std::uint64_t seed,
                                                          const VerifyOptions& opt = {});

// Long-range dependence: the increment covariance function
//   f(t) = cov(L_h, L_{t+h} - L_t) = ts_variance ((t+h)^2G - 2 t^2G + (t-h)^2G)/2
// decays like t^(2G-2).  Reports the closed-form log-log slope on
// [10 h, t_max] and, when n_reps >= 100, Monte Carlo legs at a few offsets.
std::vector<VerificationReport> check_lrd_slope(const KernelParams& kp,
                                                const InnerMeasure& rho, double h,
                                                double t_max, long n_reps,
                                                std::uint64_t seed,
                                                const VerifyOptions& opt = {});

// Long-time Gaussianity of X = h^(-G) L_h: variance against ts_variance,
// skewness and excess kurtosis against 0.  Three reports.
std::vector<VerificationReport> check_long_time_gaussianity(const KernelParams& kp,
                                                            const InnerMeasure& rho,
                                                            double h, long n_reps,
                                                            std::uint64_t seed,
                                                            const VerifyOptions& opt = {});

// Sup distance over y_grid between the empirical CF of the simulated marginal
// at time t and the quadrature CF; bootstrap standard error.  `kind` selects
// ts, ftsm or fsm.
VerificationReport check_empirical_cf(PathKind kind, const KernelParams& kp,
                                      const InnerMeasure& rho, double t,
                                      const std::vector<double>& y_grid, long n_reps,
                                      std::uint64_t seed,
                                      const VerifyOptions& opt = {});

// Variogram log-log slope across dyadic lags of uniformly gridded paths,
// against 2G.  Rejects rough-regime paths (the variogram saturates there).
VerificationReport estimate_holder_roughness(const std::vector<Path>& paths);

}  // namespace ftsm
