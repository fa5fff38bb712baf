#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ftsm/kernel.hpp"
#include "ftsm/measure.hpp"

namespace ftsm {

enum class PathKind { ts, ftsm, fsm, fbm_approx, coupled_diff };
enum class TailMode { none, gaussian };

// All randomness consumed by one truncated-series replication, drawn from
// labeled counter-based substreams of (seed, rep).  Reusing one driver across
// process kinds yields coupled paths.
struct SeriesDriver {
  std::vector<double> gammas;  // Poisson arrival epochs, increasing
  std::vector<double> exps;    // Exp(1) marks
  std::vector<double> unifs;   // U(0,1] marks
  std::vector<double> vmarks;  // jump-size marks from the normalized atom law
  std::vector<double> times;   // U(0,T] time stamps
  std::vector<std::pair<double, double>> vatoms;  // (location, probability)
  long n_terms;
  double horizon_T;
  double alpha;
  std::string rho_name;
  std::uint64_t seed;
  std::uint64_t rep;
};

struct Path {
  std::vector<double> grid;
  std::vector<double> values;
  PathKind kind;
  double H;
  double alpha;
  std::uint64_t seed;
  std::uint64_t rep;
  double tail_bound;       // heuristic scale of the first omitted jump
  std::string provenance;  // resolved parameters for reporting
};

SeriesDriver make_driver(std::uint64_t seed, double T, long n_terms,
                         const InnerMeasure& rho, double alpha);
SeriesDriver make_driver(std::uint64_t seed, std::uint64_t rep, double T, long n_terms,
                         const InnerMeasure& rho, double alpha);

// Precomputed per-(params, grid) state for the Gaussian tail compensation:
// the unit Cholesky factor of the fBm-shaped covariance and the drift shape.
struct TailPlan {
  std::vector<double> grid;  // grid the plan was built for
  std::vector<double> k_t;   // kernel primitive on the grid
  std::vector<double> chol;  // lower-triangular factor, row-major m x m
  std::size_t m = 0;
  double H = 0.0;            // kernel the plan was built for
  double alpha = 0.0;
};

TailPlan make_tail_plan(const KernelParams& kp, const std::vector<double>& grid);

// Tempered-stable Levy path (the H = 1/alpha kernel specialization).
Path simulate_ts(const SeriesDriver& drv, const SeriesConstants& sc,
                 const std::vector<double>& grid, TailMode tail = TailMode::gaussian,
                 const TailPlan* plan = nullptr);

// Fractional tempered stable motion.
Path simulate_ftsm(const SeriesDriver& drv, const KernelParams& kp,
                   const SeriesConstants& sc, const std::vector<double>& grid,
                   TailMode tail = TailMode::gaussian, const TailPlan* plan = nullptr);

// Fractional stable motion (alpha = 1 requires a symmetric measure).
Path simulate_fsm(const SeriesDriver& drv, const KernelParams& kp,
                  const SeriesConstants& sc, const std::vector<double>& grid,
                  TailMode tail = TailMode::gaussian, const TailPlan* plan = nullptr);

// Termwise-coupled difference between the fSm series and the h-rescaled
// fTSm series (symmetric measures; no centering, no tail compensation).
Path coupled_short_time_diff(const SeriesDriver& drv, const KernelParams& kp,
                             const SeriesConstants& sc, double h,
                             const std::vector<double>& grid);

// Gaussian-limit sampler: normalized shot-noise sum converging to fBm with
// Hurst index G; variance is exactly t^{2G}.
Path simulate_fbm_approx(std::uint64_t seed, const KernelParams& kp, long N,
                         const std::vector<double>& grid);
Path simulate_fbm_approx(std::uint64_t seed, std::uint64_t rep, const KernelParams& kp,
                         long N, const std::vector<double>& grid);

namespace tail {

// E[(a - Z)^+] and E[min(a, Z)^2] for Z = E * U^{1/alpha} * b, E ~ Exp(1),
// U ~ U(0,1); closed forms via incomplete gamma functions.
double eplus(double a, double b, double alpha);
double emin2(double a, double b, double alpha);

// Upper incomplete gamma Gamma(s, x) for s in (-2, 0), x > 0, s non-integer.
double upper_gamma_neg(double s, double x);

// Exponential integral E1(x), x > 0.
double expint_e1(double x);

// Conditional mean/second-moment rates of the truncated series remainder:
// the remainder of the clipped series has mean (M_n / T) k_t and covariance
// (V_n / T) * [fBm-shaped inner product].
double remainder_second_moment(const SeriesDriver& drv, const SeriesConstants& sc);
double remainder_mean(const SeriesDriver& drv, const SeriesConstants& sc);

// Euler-Maclaurin regularization of int_n^inf a(r) dr - sum_{i>n} a(i).
double euler_maclaurin_gap(double n, double A, double q);

}  // namespace tail

}  // namespace ftsm
