#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "ftsm/measure.hpp"
#include "ftsm/special.hpp"

using namespace ftsm;

static double rel(double got, double want) {
  return std::fabs(got - want) / std::fabs(want);
}

TEST_CASE("atom validation") {
  CHECK_THROWS_AS(InnerMeasure({}), std::invalid_argument);
  CHECK_THROWS_AS(InnerMeasure({{0.0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(InnerMeasure({{1.0, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(InnerMeasure({{1.0, -2.0}}), std::invalid_argument);
}

TEST_CASE("rho1 is symmetric, rho2 is not") {
  CHECK(InnerMeasure::rho1().symmetric());
  CHECK_FALSE(InnerMeasure::rho2(1.6).symmetric());
  CHECK(InnerMeasure({{-2.0, 0.5}, {2.0, 0.5}}).symmetric());
  CHECK_FALSE(InnerMeasure({{-2.0, 0.5}, {2.0, 0.4}}).symmetric());
}

TEST_CASE("moments of rho2") {
  // abs_moment(2) for alpha = 1.2: 0.5^{-1.2} * 0.25 + 1
  auto rho = InnerMeasure::rho2(1.2);
  CHECK(rel(rho.abs_moment(2.0), std::pow(0.5, -1.2) * 0.25 + 1.0) < 1e-14);
  // the alpha-moment is normalized to 2 and the signed alpha-moment vanishes
  CHECK(rel(rho.abs_moment(1.2), 2.0) < 1e-14);
  CHECK(std::fabs(rho.signed_weighted_moment(1.2)) < 1e-14);
  auto rho16 = InnerMeasure::rho2(1.6);
  CHECK(rel(rho16.abs_moment(1.6), 2.0) < 1e-14);
  // sum w x = 1 - 0.5^{-0.6}
  CHECK(rel(rho16.signed_weighted_moment(1.0), -0.51571656651039808) < 1e-13);
}

TEST_CASE("series constants for rho2 at alpha = 1.6") {
  auto rho = InnerMeasure::rho2(1.6);
  auto sc = series_constants(rho, 1.6, 1.0);
  CHECK(rel(sc.m_rho, std::pow(2.0, 1.0 / 1.6)) < 1e-14);
  CHECK(std::fabs(sc.k_prime) < 1e-14);
  CHECK(rel(sc.z_T, -1.90656937313158) < 1e-11);
  CHECK(sc.alpha == 1.6);
  CHECK(sc.horizon_T == 1.0);
}

TEST_CASE("series constants for rho2 at alpha = 0.7") {
  auto rho = InnerMeasure::rho2(0.7);
  auto sc = series_constants(rho, 0.7, 1.0);
  CHECK(std::fabs(sc.k_prime) < 1e-14);
  // k' = 0, so z_T = Gamma(1 - alpha) * sum w x
  CHECK(rel(sc.z_T, 0.561659908573347) < 1e-12);
}

TEST_CASE("series constants at alpha = 1 with unit atom") {
  // single atom at x = 1: z_T = (ln(m T) + 2 gamma) * 1 - 0 with m = 1, T = 1
  auto rho = InnerMeasure({{1.0, 1.0}});
  auto sc = series_constants(rho, 1.0, 1.0);
  CHECK(rel(sc.z_T, 2.0 * special::euler_gamma) < 1e-13);
}

TEST_CASE("short_time_drift branches") {
  // alpha > 1: both zero
  auto b16 = short_time_drift(InnerMeasure::rho1(), 1.6, 0.01);
  CHECK(b16.first == 0.0);
  CHECK(b16.second == 0.0);
  // alpha < 1 with unit atom: b = Gamma(1 - alpha) sum w x
  auto b07 = short_time_drift(InnerMeasure({{1.0, 1.0}}), 0.7, 0.1);
  CHECK(rel(b07.second, special::gamma_real(0.3)) < 1e-12);
  CHECK(rel(b07.first, 0.1 * special::gamma_real(0.3)) < 1e-12);
  // rho2 at alpha = 0.7
  auto b = short_time_drift(InnerMeasure::rho2(0.7), 0.7, 0.01);
  CHECK(rel(b.second, 0.5616599085733475) < 1e-12);
  CHECK(rel(b.first, 0.005616599085733475) < 1e-12);
  // alpha = 1: b = -(1 + ln h) sum w x
  auto b1 = short_time_drift(InnerMeasure({{1.0, 1.0}}), 1.0, 0.1);
  CHECK(rel(b1.second, -(1.0 + std::log(0.1))) < 1e-13);
}

TEST_CASE("ts_variance") {
  CHECK(rel(ts_variance(InnerMeasure::rho1(), 1.6), 4.4363190875153755) < 1e-13);
  CHECK(rel(ts_variance(InnerMeasure::rho2(1.6), 1.6), 3.8992101275760254) < 1e-13);
}

TEST_CASE("v_sampling_weights normalize") {
  auto vw = v_sampling_weights(InnerMeasure::rho2(1.6), 1.6);
  REQUIRE(vw.size() == 2);
  double total = 0.0;
  for (auto& [x, p] : vw) {
    CHECK(p > 0.0);
    total += p;
  }
  CHECK(rel(total, 1.0) < 1e-14);
  // rho2 gives probability 1/2 to each atom
  CHECK(rel(vw[0].second, 0.5) < 1e-14);
  CHECK(rel(vw[1].second, 0.5) < 1e-14);
}
