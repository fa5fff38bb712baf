#include "ftsm/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ftsm/special.hpp"

namespace ftsm {

namespace {

void require_alpha(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 2.0))
    throw std::invalid_argument("alpha must lie in (0, 2)");
}

}  // namespace

InnerMeasure::InnerMeasure(std::vector<Atom> atoms, std::string name)
    : atoms_(std::move(atoms)), name_(std::move(name)) {
  if (atoms_.empty()) throw std::invalid_argument("InnerMeasure: needs at least one atom");
  for (const auto& a : atoms_) {
    if (!std::isfinite(a.x) || a.x == 0.0)
      throw std::invalid_argument("InnerMeasure: atom locations must be finite and nonzero");
    if (!std::isfinite(a.w) || !(a.w > 0.0))
      throw std::invalid_argument("InnerMeasure: atom weights must be finite and positive");
  }
  std::sort(atoms_.begin(), atoms_.end(),
            [](const Atom& a, const Atom& b) { return a.x < b.x; });
}

InnerMeasure InnerMeasure::rho1() {
  return InnerMeasure({{-1.0, 1.0}, {1.0, 1.0}}, "rho1");
}

InnerMeasure InnerMeasure::rho2(double alpha) {
  require_alpha(alpha);
  return InnerMeasure({{-0.5, std::pow(0.5, -alpha)}, {1.0, 1.0}}, "rho2");
}

double InnerMeasure::total_mass() const {
  double s = 0.0;
  for (const auto& a : atoms_) s += a.w;
  return s;
}

bool InnerMeasure::symmetric() const {
  // Atoms are sorted by location; mirror-match from both ends.
  const std::size_t n = atoms_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Atom& a = atoms_[i];
    const Atom& b = atoms_[n - 1 - i];
    const double scale = std::max(std::fabs(a.x), std::fabs(b.x));
    if (std::fabs(a.x + b.x) > 1e-12 * scale) return false;
    if (std::fabs(a.w - b.w) > 1e-12 * std::max(a.w, b.w)) return false;
  }
  return true;
}

double InnerMeasure::abs_moment(double p) const {
  if (!(p >= 0.0)) throw std::invalid_argument("abs_moment: requires p >= 0");
  double s = 0.0;
  for (const auto& a : atoms_) s += a.w * std::pow(std::fabs(a.x), p);
  return s;
}

double InnerMeasure::signed_weighted_moment(double p, bool log_variant) const {
  double s = 0.0;
  if (log_variant) {
    for (const auto& a : atoms_) s += a.w * a.x * std::log(std::fabs(a.x));
    return s;
  }
  for (const auto& a : atoms_) s += a.w * a.x * std::pow(std::fabs(a.x), p - 1.0);
  return s;
}

SeriesConstants series_constants(const InnerMeasure& rho, double alpha, double T) {
  require_alpha(alpha);
  if (!(T > 0.0)) throw std::invalid_argument("series_constants: requires T > 0");
  const double m_alpha = rho.abs_moment(alpha);
  const double m = std::pow(m_alpha, 1.0 / alpha);
  const double k_prime = rho.signed_weighted_moment(alpha) / m_alpha;
  const double mean_x = rho.signed_weighted_moment(1.0);
  double z;
  if (alpha == 1.0) {
    z = (std::log(m * T) + 2.0 * special::euler_gamma) * mean_x -
        rho.signed_weighted_moment(0.0, /*log_variant=*/true);
  } else {
    z = m * std::pow(alpha / T, -1.0 / alpha) * special::riemann_zeta(1.0 / alpha) *
            k_prime / T +
        std::fabs(special::gamma_real(1.0 - alpha)) * mean_x;
  }
  return SeriesConstants{m, k_prime, z, alpha, T};
}

std::pair<double, double> short_time_drift(const InnerMeasure& rho, double alpha,
                                           double h) {
  require_alpha(alpha);
  if (!(h > 0.0)) throw std::invalid_argument("short_time_drift: requires h > 0");
  if (alpha > 1.0) return {0.0, 0.0};
  const double mean_x = rho.signed_weighted_moment(1.0);
  const double b = (alpha == 1.0) ? -(1.0 + std::log(h)) * mean_x
                                  : special::gamma_real(1.0 - alpha) * mean_x;
  return {h * b, b};
}

double ts_variance(const InnerMeasure& rho, double alpha) {
  require_alpha(alpha);
  return special::gamma_real(2.0 - alpha) * rho.abs_moment(2.0);
}

std::vector<std::pair<double, double>> v_sampling_weights(const InnerMeasure& rho,
                                                          double alpha) {
  require_alpha(alpha);
  const double m_alpha = rho.abs_moment(alpha);
  std::vector<std::pair<double, double>> out;
  out.reserve(rho.atoms().size());
  for (const auto& a : rho.atoms())
    out.emplace_back(a.x, a.w * std::pow(std::fabs(a.x), alpha) / m_alpha);
  return out;
}

}  // namespace ftsm
