#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "ftsm/kernel.hpp"
#include "ftsm/measure.hpp"
#include "ftsm/verify.hpp"

using namespace ftsm;

TEST_CASE("default_threads honors the environment override") {
  setenv("FTSM_THREADS", "3", 1);
  CHECK(default_threads() == 3);
  setenv("FTSM_THREADS", "not-a-number", 1);
  CHECK(default_threads() >= 1);
  unsetenv("FTSM_THREADS");
  CHECK(default_threads() >= 1);
}

TEST_CASE("covariance check passes, is deterministic and thread-invariant") {
  auto kp = make_kernel_params(0.8, 1.6);
  auto rho = InnerMeasure::rho2(1.6);
  std::vector<double> grid = {0.25, 0.5, 1.0};
  VerifyOptions opt;
  opt.n_terms = 300;
  opt.threads = 1;
  auto a = check_covariance(kp, rho, grid, 400, 2025, opt);
  REQUIRE(a.size() == 6);  // 3 diagonal + 3 off-diagonal pairs
  for (const auto& r : a) {
    CHECK(r.passed);
    CHECK(r.n_reps == 400);
    CHECK(r.std_error > 0.0);
    CHECK(r.seed == 2025);
    CHECK(!r.name.empty());
    CHECK(!r.params.empty());
  }
  auto b = check_covariance(kp, rho, grid, 400, 2025, opt);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].estimate == b[i].estimate);
    CHECK(a[i].std_error == b[i].std_error);
  }
  opt.threads = 3;
  auto c = check_covariance(kp, rho, grid, 400, 2025, opt);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].estimate == c[i].estimate);
    CHECK(a[i].z_score == c[i].z_score);
  }
  CHECK_THROWS_AS(check_covariance(kp, rho, grid, 1, 2025, opt), std::invalid_argument);
}

TEST_CASE("quadratic variation scaling on a small run") {
  auto kp = make_kernel_params(0.8, 1.6);
  auto rho = InnerMeasure::rho1();
  VerifyOptions opt;
  opt.n_terms = 400;
  opt.threads = 1;
  opt.slope_tol = 0.2;  // loose: only 64 replications here
  auto reports = check_quadratic_variation(kp, rho, 1.0, 64, 64, 7, opt);
  // dyadic N in {16, 32, 64} plus the fitted slope
  REQUIRE(reports.size() == 4);
  CHECK(reports.back().name == "qv_slope");
  CHECK(reports.back().theoretical == 1.0 - 2.0 * kp.G);
  CHECK(reports.back().passed);
  for (const auto& r : reports) CHECK(r.passed);

  CHECK_THROWS_AS(check_quadratic_variation(kp, rho, 1.0, 48, 64, 7, opt),
                  std::invalid_argument);
  auto kplevy = make_kernel_params(1.0 / 1.6, 1.6);
  CHECK_THROWS_AS(check_quadratic_variation(kplevy, rho, 1.0, 64, 64, 7, opt),
                  std::invalid_argument);
}

TEST_CASE("LRD slope: closed form and Monte Carlo legs") {
  auto kp = make_kernel_params(0.8, 1.6);
  auto rho = InnerMeasure::rho1();
  VerifyOptions opt;
  opt.n_terms = 300;
  opt.threads = 1;
  // closed-form slope only
  auto s = check_lrd_slope(kp, rho, 1.0, 200.0, 0, 11, opt);
  REQUIRE(s.size() == 1);
  CHECK(s[0].passed);
  CHECK(std::fabs(s[0].estimate - (2.0 * kp.G - 2.0)) < opt.lrd_slope_tol);
  // with replications, covariance legs are appended
  auto full = check_lrd_slope(kp, rho, 1.0, 200.0, 400, 11, opt);
  CHECK(full.size() == 4);
  for (const auto& r : full) CHECK(r.passed);
  auto kplevy = make_kernel_params(1.0 / 1.6, 1.6);
  CHECK_THROWS_AS(check_lrd_slope(kplevy, rho, 1.0, 200.0, 0, 11, opt),
                  std::invalid_argument);
}

TEST_CASE("long-time gaussianity on a small run") {
  auto kp = make_kernel_params(0.8, 1.6);
  auto rho = InnerMeasure::rho1();
  VerifyOptions opt;
  opt.n_terms = 500;
  opt.threads = 1;
  auto reports = check_long_time_gaussianity(kp, rho, 30.0, 1500, 3, opt);
  REQUIRE(reports.size() == 3);
  for (const auto& r : reports) {
    CHECK(r.passed);
    CHECK(r.n_reps == 1500);
  }
  // variance respects the exact second-order self-similarity at every h
  CHECK(reports[0].theoretical == ts_variance(rho, 1.6));
}

TEST_CASE("empirical CF against the quadrature oracle") {
  auto kp = make_kernel_params(0.8, 1.6);
  auto rho = InnerMeasure::rho2(1.6);
  std::vector<double> ys;
  for (double y = -3.0; y <= 3.0; y += 0.5) ys.push_back(y);
  VerifyOptions opt;
  opt.n_terms = 400;
  opt.threads = 1;
  opt.cf_sup_threshold = 0.08;  // 3000 replications only
  auto ts = check_empirical_cf(PathKind::ts, kp, rho, 1.0, ys, 3000, 17, opt);
  CHECK(ts.passed);
  CHECK(ts.estimate < 0.08);
  CHECK(ts.std_error > 0.0);
  auto ft = check_empirical_cf(PathKind::ftsm, kp, rho, 1.0, ys, 3000, 17, opt);
  CHECK(ft.passed);
  // deterministic in the seed
  auto ts2 = check_empirical_cf(PathKind::ts, kp, rho, 1.0, ys, 3000, 17, opt);
  CHECK(ts.estimate == ts2.estimate);
}

TEST_CASE("holder roughness from fBm-limit paths") {
  auto kp = make_kernel_params(0.8, 1.6);
  const long n = 256;
  std::vector<double> grid(n);
  for (long k = 0; k < n; ++k) grid[k] = static_cast<double>(k + 1) / static_cast<double>(n);
  std::vector<Path> paths;
  for (std::uint64_t r = 0; r < 48; ++r) {
    paths.push_back(simulate_fbm_approx(21, r, kp, 700, grid));
  }
  auto rep = estimate_holder_roughness(paths);
  CHECK(rep.theoretical == 2.0 * kp.G);
  CHECK(rep.passed);
  CHECK(std::fabs(rep.estimate - 2.0 * kp.G) < 0.05);
  // rough-regime paths are rejected up front
  auto kr = make_kernel_params(0.5, 1.6);
  std::vector<Path> rough = {simulate_fbm_approx(21, 0, kr, 64, grid)};
  CHECK_THROWS_AS(estimate_holder_roughness(rough), std::invalid_argument);
}
