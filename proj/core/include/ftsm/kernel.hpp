#pragma once

#include <utility>

namespace ftsm {

// Memory regime of the Volterra kernel, classified by the sign of
// delta = H - 1/alpha.  |G - 1/2| < 1e-8 collapses to the levy regime, where
// the kernel is the indicator of [0, t].
enum class Regime { long_memory, levy, rough };

struct KernelParams {
  double H;       // self-similarity index
  double alpha;   // stability index, in (0, 2)
  double G;       // H - 1/alpha + 1/2, in (0, 1)
  double delta;   // H - 1/alpha, in (-1/2, 1/2)
  double c;       // normalization making the L^2 constant equal 1
  double conn;    // hypergeometric connection coefficient (series pivot at u = 1/2)
  double c1;      // \int_0^1 K(1, u) du, used by the primitive
  Regime regime;
};

// Validates alpha in (0, 2) and H in (1/alpha - 1/2, 1/alpha + 1/2), then
// precomputes the derived constants.
KernelParams make_kernel_params(double H, double alpha);

// G = H - 1/alpha + 1/2.
double g_exponent(const KernelParams& kp);

// Normalization constant c_{H,alpha}; throws in the levy regime where the
// kernel is an exact indicator and needs no normalization.
double c_norm(const KernelParams& kp);

// True iff K(t, .) is in L^p, i.e. 1/alpha - 1/p < H < 1/alpha + 1/p.
bool lp_integrable(const KernelParams& kp, double p);

// K(1, u) for u in (0, 1); evaluated by hypergeometric series to machine
// precision.
double kernel_unit(const KernelParams& kp, double u);

// K(t, s).  Zero outside [0, t]; +infinity at the integrable singularities
// (s = 0 off the levy regime, s = t in the rough regime).
double kernel_eval(const KernelParams& kp, double t, double s);

// C_{H,alpha,p} = \int_0^1 K(1, u)^p du; requires lp_integrable.
double kernel_lp_const(const KernelParams& kp, double p);

// k_t = \int_0^t K(t, s) ds = C_{H,alpha,1} t^{1 + delta}.
double kernel_primitive(const KernelParams& kp, double t);

// \int_0^{min(t,s)} K(t, u) K(s, u) du
//   = ( t^{2G} + s^{2G} - |t - s|^{2G} ) / 2.
double inner_product(const KernelParams& kp, double t, double s);

// Smoothed kernel K^{n,eps}(t, s) = K^n(t, s) + eps together with its time
// derivative; long-memory regime only, s in (0, t].
std::pair<double, double> regularized_kernel(const KernelParams& kp, long n,
                                             double eps, double t, double s);

// K(t1, s) - K(t2, s) for 0 < s < t2 <= t1, evaluated without cancellation.
double kernel_time_increment(const KernelParams& kp, double t1, double t2, double s);

}  // namespace ftsm
