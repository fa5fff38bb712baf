#pragma once

#include <complex>

namespace ftsm::special {

// Euler-Mascheroni constant.
inline constexpr double euler_gamma = 0.57721566490153286061;

// Gamma function for real non-pole arguments (Lanczos, relative error
// well below 1e-12 over the range used here).  Throws std::invalid_argument
// at poles (non-positive integers).
double gamma_real(double x);

// log |Gamma(x)| for x > 0.
double log_gamma_pos(double x);

// Riemann zeta for real s != 1 (alternating-series acceleration).
double riemann_zeta(double s);

// Principal branch of (1 - i s)^a for real s, a.
std::complex<double> power_one_minus_is(double s, double a);

// Principal branch of (1 - i s) * log(1 - i s).
std::complex<double> xlogx_one_minus_is(double s);

}  // namespace ftsm::special
