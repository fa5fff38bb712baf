#pragma once

#include <complex>

#include "ftsm/kernel.hpp"
#include "ftsm/measure.hpp"

namespace ftsm {

// Levy exponents of the driving laws, all continuous at s = 0 with value 0.
//   phi:     compensated tempered-stable exponent (two moments matched)
//   psi:     uncompensated variant used by the short-time rescaling
//   varphi:  strictly stable exponent (short-time limit law)
//   varphi_tilde: symmetrized stable exponent (alpha = 1 drops the drift)
//   vartheta: fully compensated exponent with exponential damping
//             (long-time rescaling); equals phi for alpha in (1,2)
enum class ExponentKind { phi, psi, varphi, varphi_tilde, vartheta };

std::complex<double> exponent(ExponentKind kind, double s, double alpha);

// Characteristic function of the centered TS Levy marginal X_t at y.
std::complex<double> cf_ts(double y, double t, const InnerMeasure& rho, double alpha);

// Characteristic function of the fTSm marginal L^H_t at y (quadrature).
std::complex<double> cf_ftsm(double y, double t, const KernelParams& kp,
                             const InnerMeasure& rho);

// Characteristic function of the fSm marginal (closed form).
std::complex<double> cf_fsm(double y, double t, const KernelParams& kp,
                            const InnerMeasure& rho);

// CF of the short-time rescaled process h^{-H} L^H_{ht} at time t.
std::complex<double> cf_rescaled_short(double y, double t, const KernelParams& kp,
                                       const InnerMeasure& rho, double h);

// CF of the long-time rescaled variable h^{-G} L^H_h; converges to the
// Gaussian exp(-y^2 ts_variance / 2) as h grows.
std::complex<double> cf_rescaled_long(double y, const KernelParams& kp,
                                      const InnerMeasure& rho, double h);

// Codifference of (theta1, theta2) against the lag-one increment at offset t:
//   log E e^{i th1 X} + log E e^{i th2 Y} - log E e^{i(th1 X + th2 Y)}
// with X = L_{t+1} - L_t and Y = L_1; t >= 1.
std::complex<double> codifference(double theta1, double theta2, double t,
                                  const KernelParams& kp, const InnerMeasure& rho);

// Limit constant C with codifference(t) ~ C t^{2(G-1)}; alpha != 1.
std::complex<double> codifference_asymptotic_constant(double theta1, double theta2,
                                                      const KernelParams& kp,
                                                      const InnerMeasure& rho);

// Covariation tau(t, s) of the short-time limit fSm; alpha in (1, 2).
double covariation_tau(double t, double s, const KernelParams& kp,
                       const InnerMeasure& rho);

}  // namespace ftsm
