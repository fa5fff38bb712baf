#pragma once

#include <string>
#include <utility>
#include <vector>

namespace ftsm {

// One atom of a finite discrete measure on R \ {0}.
struct Atom {
  double x;  // location, x != 0
  double w;  // weight, w > 0
};

// Finite measure with finitely many atoms; drives the tempered-stable jump
// law.  Immutable after construction.
class InnerMeasure {
 public:
  explicit InnerMeasure(std::vector<Atom> atoms, std::string name = "custom");

  // delta_{-1} + delta_{+1} (symmetric two-point measure).
  static InnerMeasure rho1();
  // 0.5^{-alpha} delta_{-0.5} + delta_{+1}; asymmetric but with vanishing
  // signed alpha-moment.
  static InnerMeasure rho2(double alpha);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::string& name() const { return name_; }
  double total_mass() const;
  bool symmetric() const;

  // sum_j w_j |x_j|^p, p >= 0.
  double abs_moment(double p) const;
  // sum_j w_j x_j |x_j|^{p-1}; with log_variant, sum_j w_j x_j ln|x_j|.
  double signed_weighted_moment(double p, bool log_variant = false) const;

 private:
  std::vector<Atom> atoms_;
  std::string name_;
};

// Scale and centering constants of the truncated shot-noise series on [0, T].
struct SeriesConstants {
  double m_rho;      // (sum w |x|^alpha)^(1/alpha)
  double k_prime;    // m^{-alpha} sum w x |x|^{alpha-1}
  double z_T;        // residual drift rate
  double alpha;
  double horizon_T;
};

SeriesConstants series_constants(const InnerMeasure& rho, double alpha, double T);

// Short-time drift pair (b_{h,alpha}, b): zero for alpha in (1,2);
// b = Gamma(1-alpha) * sum w x for alpha < 1 and -(1 + ln h) * sum w x for
// alpha = 1; b_{h,alpha} = h * b.
std::pair<double, double> short_time_drift(const InnerMeasure& rho, double alpha,
                                           double h);

// Variance of the unit-time tempered-stable marginal:
// Gamma(2 - alpha) * sum w x^2.
double ts_variance(const InnerMeasure& rho, double alpha);

// Normalized jump-size sampling distribution: (location, probability) with
// p_j = w_j |x_j|^alpha / m^alpha.
std::vector<std::pair<double, double>> v_sampling_weights(const InnerMeasure& rho,
                                                          double alpha);

}  // namespace ftsm
