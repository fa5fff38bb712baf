#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "ftsm/kernel.hpp"
#include "ftsm/quadrature.hpp"

using namespace ftsm;

static double rel(double got, double want) {
  return std::fabs(got - want) / std::fabs(want);
}

TEST_CASE("parameter validation and regime classification") {
  CHECK_THROWS_AS(make_kernel_params(0.8, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_kernel_params(0.8, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(make_kernel_params(1.2, 1.6), std::invalid_argument);   // H >= 1/a + 1/2
  CHECK_THROWS_AS(make_kernel_params(0.125, 1.6), std::invalid_argument); // H <= 1/a - 1/2

  CHECK(make_kernel_params(0.8, 1.6).regime == Regime::long_memory);
  CHECK(make_kernel_params(0.5, 1.6).regime == Regime::rough);
  CHECK(make_kernel_params(0.625, 1.6).regime == Regime::levy);
  CHECK(make_kernel_params(1.0, 1.0).regime == Regime::levy);
}

TEST_CASE("levy regime canonicalizes to an exact indicator") {
  auto kp = make_kernel_params(1.0 / 1.6 + 1e-9, 1.6);  // inside the 1e-8 window
  CHECK(kp.regime == Regime::levy);
  CHECK(kp.delta == 0.0);
  CHECK(kp.G == 0.5);
  CHECK(kernel_eval(kp, 1.0, 0.3) == 1.0);
  CHECK(kernel_eval(kp, 2.5, 2.5) == 1.0);
  CHECK(kernel_eval(kp, 1.0, 1.5) == 0.0);  // outside the support
  CHECK(kernel_primitive(kp, 3.0) == 3.0);
  CHECK(inner_product(kp, 2.0, 3.0) == 2.0);

  auto just_outside = make_kernel_params(1.0 / 1.6 + 1e-7, 1.6);
  CHECK(just_outside.regime == Regime::long_memory);
}

TEST_CASE("normalization and connection constants") {
  CHECK(rel(make_kernel_params(0.8, 1.6).c, 1.0946899234222552) < 1e-12);
  CHECK(rel(make_kernel_params(1.6, 0.7).c, 1.0946980039800368) < 1e-12);
  CHECK(rel(make_kernel_params(1.0, 1.2).c, 1.0945581122818997) < 1e-12);
  CHECK(rel(make_kernel_params(0.6, 1.9).c, 1.0610426967399012) < 1e-12);
  CHECK(rel(make_kernel_params(0.5, 1.6).c, 0.84565308905635427) < 1e-12);

  CHECK(rel(make_kernel_params(0.8, 1.6).conn, 0.56327636924491596) < 1e-12);
  CHECK(rel(make_kernel_params(1.6, 0.7).conn, 0.5602877993290586) < 1e-12);
  CHECK(rel(make_kernel_params(1.0, 1.2).conn, 0.55645633726115267) < 1e-12);
  CHECK(rel(make_kernel_params(0.6, 1.9).conn, 0.50957390058208529) < 1e-12);
  CHECK(rel(make_kernel_params(0.5, 1.6).conn, 3.6706656565458751) < 1e-12);

  CHECK_THROWS_AS(c_norm(make_kernel_params(0.625, 1.6)), std::invalid_argument);
}

TEST_CASE("kernel_unit frozen table") {
  struct Row {
    double H, alpha;
    double k[5];
  };
  const double us[5] = {0.1, 0.25, 0.5, 0.75, 0.9};
  const Row rows[] = {
      {0.8, 1.6, {1.1932957697266713, 1.0957301684425301, 0.99083776313246483,
                  0.86584942663576033, 0.73369796793785757}},
      {1.6, 0.7, {1.189099654341076, 1.0947554404600097, 0.99249480227327658,
                  0.86988943305377589, 0.73968358416605167}},
      {1.0, 1.2, {1.1834771219195538, 1.0933595073945992, 0.99459206606231933,
                  0.87519170690698011, 0.7476395264410565}},
      {0.6, 1.9, {1.0743829610224302, 1.0491241183506872, 1.0124350960611972,
                  0.95951263627407916, 0.89595540062720826}},
      {0.5, 1.6, {0.91600587706134842, 0.90651637443615395, 0.93562438123519436,
                  1.0111867745430743, 1.1298718998586628}},
  };
  for (const Row& r : rows) {
    auto kp = make_kernel_params(r.H, r.alpha);
    for (int i = 0; i < 5; ++i) {
      CHECK(rel(kernel_unit(kp, us[i]), r.k[i]) < 1e-13);
    }
  }
}

TEST_CASE("kernel_eval scaling off the unit interval") {
  auto kp = make_kernel_params(0.8, 1.6);
  CHECK(rel(kernel_eval(kp, 2.0, 0.6), 1.2116635165169789) < 1e-13);
  CHECK(rel(kernel_eval(kp, 0.5, 0.2), 0.91394253300148658) < 1e-13);
  auto kr = make_kernel_params(0.5, 1.6);
  CHECK(rel(kernel_eval(kr, 2.0, 0.6), 0.83388051034559149) < 1e-13);
  // support boundaries
  CHECK(kernel_eval(kp, 1.0, 1.2) == 0.0);
  CHECK(kernel_eval(kp, 1.0, -0.1) == 0.0);
}

TEST_CASE("scaling identity K(ct, cs) = c^delta K(t, s)") {
  for (auto [H, alpha] : std::vector<std::pair<double, double>>{
           {0.8, 1.6}, {1.6, 0.7}, {0.5, 1.6}}) {
    auto kp = make_kernel_params(H, alpha);
    const double c = 2.7;
    for (double t : {0.5, 1.0, 3.0}) {
      for (double frac : {0.2, 0.65, 0.95}) {
        const double s = frac * t;
        CHECK(rel(kernel_eval(kp, c * t, c * s),
                  std::pow(c, kp.delta) * kernel_eval(kp, t, s)) < 1e-12);
      }
    }
  }
}

TEST_CASE("lp membership matches the analytic window") {
  auto kp = make_kernel_params(0.8, 1.6);
  CHECK(lp_integrable(kp, 1.0));
  CHECK(lp_integrable(kp, 2.0));
  CHECK_FALSE(lp_integrable(kp, 8.0));  // H - 1/alpha = 0.175 >= 1/8
  auto kr = make_kernel_params(0.5, 1.6);
  CHECK(lp_integrable(kr, 2.0));
  CHECK_FALSE(lp_integrable(kr, 9.0));  // 1/alpha - H = 0.125 >= 1/9
}

TEST_CASE("lp constants frozen values and the L2 normalization") {
  auto kp = make_kernel_params(0.8, 1.6);
  CHECK(rel(kernel_lp_const(kp, 1.0), 0.98029338811587663) < 1e-9);
  CHECK(rel(kernel_lp_const(kp, 1.6), 0.98752146484493053) < 1e-9);
  CHECK(std::fabs(kernel_lp_const(kp, 2.0) - 1.0) < 1e-10);
  CHECK(rel(kernel_lp_const(kp, 4.0), 1.1811329306096567) < 1e-9);
  auto kr = make_kernel_params(0.5, 1.6);
  CHECK(rel(kernel_lp_const(kr, 1.0), 0.99175502979208863) < 1e-9);
  CHECK(std::fabs(kernel_lp_const(kr, 2.0) - 1.0) < 1e-9);
  // every admissible tuple is L2-normalized
  for (auto [H, alpha] : std::vector<std::pair<double, double>>{
           {1.6, 0.7}, {1.0, 1.2}, {0.6, 1.9}}) {
    CHECK(std::fabs(kernel_lp_const(make_kernel_params(H, alpha), 2.0) - 1.0) < 1e-9);
  }
  CHECK_THROWS_AS(kernel_lp_const(kp, 8.0), std::invalid_argument);
}

TEST_CASE("kernel_primitive") {
  auto kp = make_kernel_params(0.8, 1.6);
  CHECK(rel(kernel_primitive(kp, 2.0), 2.2134326828987145) < 1e-9);
  // primitive(t) = C1 t^{1+delta}
  CHECK(rel(kernel_primitive(kp, 3.0) / kernel_primitive(kp, 1.0),
            std::pow(3.0, 1.175)) < 1e-12);
}

TEST_CASE("inner_product equals the fBm covariance shape") {
  for (auto [H, alpha] : std::vector<std::pair<double, double>>{
           {0.8, 1.6}, {1.6, 0.7}, {0.5, 1.6}}) {
    auto kp = make_kernel_params(H, alpha);
    const double G = kp.G;
    for (auto [t, s] : std::vector<std::pair<double, double>>{
             {1.0, 0.5}, {2.0, 0.3}, {1.5, 1.5}, {0.4, 1.1}}) {
      const double want =
          0.5 * (std::pow(t, 2 * G) + std::pow(s, 2 * G) - std::pow(std::fabs(t - s), 2 * G));
      CHECK(std::fabs(inner_product(kp, t, s) - want) < 1e-8);
    }
  }
  // t = 2s makes the closed form collapse to t^{2G}/2 + s^{2G} - s^{2G} ... spot value
  auto kp = make_kernel_params(0.8, 1.6);
  CHECK(std::fabs(inner_product(kp, 1.0, 0.5) - 0.5) < 1e-9);
}

TEST_CASE("kernel_time_increment frozen values and positivity") {
  auto kp = make_kernel_params(0.8, 1.6);
  CHECK(rel(kernel_time_increment(kp, 1.5, 1.0, 0.5), 0.14616316098262077) < 1e-10);
  auto kr = make_kernel_params(0.5, 1.6);
  CHECK(rel(kernel_time_increment(kr, 1.5, 1.0, 0.5), -0.068544623785059796) < 1e-10);
  auto k7 = make_kernel_params(1.6, 0.7);
  CHECK(rel(kernel_time_increment(k7, 2.0, 1.0, 0.3), 0.22073361354980653) < 1e-10);
  // consistency with direct evaluation
  CHECK(rel(kernel_time_increment(kp, 2.0, 1.0, 0.4),
            kernel_eval(kp, 2.0, 0.4) - kernel_eval(kp, 1.0, 0.4)) < 1e-9);
  CHECK_THROWS_AS(kernel_time_increment(kp, 1.0, 2.0, 0.5), std::invalid_argument);
}

TEST_CASE("regularized_kernel value and derivative") {
  auto kp = make_kernel_params(0.8, 1.6);
  auto [kn, dkn] = regularized_kernel(kp, 100, 0.0, 1.0, 0.5);
  CHECK(rel(kn, 0.50399403907154922) < 1e-9);
  CHECK(rel(dkn, 0.3769328802683354) < 1e-12);
  // n -> infinity recovers the sharp time derivative
  auto big = regularized_kernel(kp, 1000000000L, 0.0, 1.0, 0.5);
  CHECK(rel(big.second, 0.3831414731977893) < 1e-7);
  // eps shifts the value, not the derivative
  auto eps = regularized_kernel(kp, 100, 0.25, 1.0, 0.5);
  CHECK(rel(eps.first - 0.25, kn) < 1e-12);
  CHECK(eps.second == dkn);
  CHECK_THROWS_AS(regularized_kernel(make_kernel_params(0.5, 1.6), 10, 0.0, 1.0, 0.5),
                  std::invalid_argument);
}

TEST_CASE("kernel_unit agrees with direct quadrature of its own primitive") {
  // independent sanity: integrate K(1, u) and compare with C1
  auto kp = make_kernel_params(0.8, 1.6);
  auto f = [&](double u) { return kernel_unit(kp, u); };
  const double direct = quad::unit_power(f, -kp.delta, kp.delta, 1e-11);
  CHECK(rel(direct, kernel_lp_const(kp, 1.0)) < 1e-9);
}
