#pragma once

// Gauss-Legendre quadrature with adaptive bisection and power-law endpoint
// substitutions.  All nodes are interior, so integrands may blow up at the
// interval ends as long as the declared endpoint exponents make the
// substituted integrand bounded.

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>

namespace ftsm::quad {

// 64-point Gauss-Legendre rule on [-1, 1].
inline constexpr double kGL64Nodes[64] = {
    -0.999305041735772139457, -0.996340116771955279347,
    -0.991013371476744320739, -0.983336253884625956931,
    -0.973326827789910963742, -0.961008799652053718919,
    -0.946411374858402816062, -0.929569172131939575821,
    -0.910522137078502805756, -0.889315445995114105853,
    -0.865999398154092819761, -0.840629296252580362752,
    -0.813265315122797559742, -0.78397235894334140761,
    -0.752819907260531896612, -0.719881850171610826849,
    -0.685236313054233242564, -0.648965471254657339858,
    -0.611155355172393250249, -0.571895646202634034284,
    -0.531279464019894545658, -0.489403145707052957479,
    -0.446366017253464087985, -0.402270157963991603696,
    -0.35722015833766811595,  -0.311322871990210956158,
    -0.264687162208767416374, -0.21742364374000708415,
    -0.169644420423992818037, -0.12146281929612055447,
    -0.0729931217877990394495, -0.024350292663424432509,
    0.024350292663424432509,  0.0729931217877990394495,
    0.12146281929612055447,   0.169644420423992818037,
    0.21742364374000708415,   0.264687162208767416374,
    0.311322871990210956158,  0.35722015833766811595,
    0.402270157963991603696,  0.446366017253464087985,
    0.489403145707052957479,  0.531279464019894545658,
    0.571895646202634034284,  0.611155355172393250249,
    0.648965471254657339858,  0.685236313054233242564,
    0.719881850171610826849,  0.752819907260531896612,
    0.78397235894334140761,   0.813265315122797559742,
    0.840629296252580362752,  0.865999398154092819761,
    0.889315445995114105853,  0.910522137078502805756,
    0.929569172131939575821,  0.946411374858402816062,
    0.961008799652053718919,  0.973326827789910963742,
    0.983336253884625956931,  0.991013371476744320739,
    0.996340116771955279347,  0.999305041735772139457,
};

inline constexpr double kGL64Weights[64] = {
    0.0017832807216964329473,  0.00414703326056246763529,
    0.00650445796897836285612, 0.00884675982636394772303,
    0.0111681394601311288186,  0.0134630478967186425981,
    0.015726030476024719322,   0.017951715775697343085,
    0.0201348231535302093723,  0.0222701738083832541593,
    0.0243527025687108733382,  0.0263774697150546586717,
    0.0283396726142594832275,  0.030234657072402478868,
    0.0320579283548515535855,  0.0338051618371416093916,
    0.0354722132568823838107,  0.0370551285402400460404,
    0.038550153178615629129,   0.0399537411327203413867,
    0.0412625632426235286102,  0.0424735151236535890073,
    0.0435837245293234533768,  0.0445905581637565630601,
    0.0454916279274181444798,  0.046284796581314417296,
    0.0469681828162100173253,  0.0475401657148303086623,
    0.0479993885964583077281,  0.0483447622348029571698,
    0.0485754674415034269348,  0.0486909570091397203834,
    0.0486909570091397203834,  0.0485754674415034269348,
    0.0483447622348029571698,  0.0479993885964583077281,
    0.0475401657148303086623,  0.0469681828162100173253,
    0.046284796581314417296,   0.0454916279274181444798,
    0.0445905581637565630601,  0.0435837245293234533768,
    0.0424735151236535890073,  0.0412625632426235286102,
    0.0399537411327203413867,  0.038550153178615629129,
    0.0370551285402400460404,  0.0354722132568823838107,
    0.0338051618371416093916,  0.0320579283548515535855,
    0.030234657072402478868,   0.0283396726142594832275,
    0.0263774697150546586717,  0.0243527025687108733382,
    0.0222701738083832541593,  0.0201348231535302093723,
    0.017951715775697343085,   0.015726030476024719322,
    0.0134630478967186425981,  0.0111681394601311288186,
    0.00884675982636394772303, 0.00650445796897836285612,
    0.00414703326056246763529, 0.0017832807216964329473,
};

inline double magnitude(double x) { return std::fabs(x); }
inline double magnitude(const std::complex<double>& z) { return std::abs(z); }

// Single 64-point panel on [a, b].
template <class F>
auto gl64(F&& f, double a, double b) -> decltype(f(a)) {
  using R = decltype(f(a));
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  R acc{};
  for (int i = 0; i < 64; ++i) acc += kGL64Weights[i] * f(mid + half * kGL64Nodes[i]);
  return half * acc;
}

namespace detail {

template <class F, class R>
R adaptive_rec(F& f, double a, double b, const R& whole, double abs_tol, int depth) {
  const double mid = 0.5 * (a + b);
  const R left = gl64(f, a, mid);
  const R right = gl64(f, mid, b);
  const R sum = left + right;
  if (depth <= 0 || magnitude(sum - whole) <= abs_tol) return sum;
  return adaptive_rec(f, a, mid, left, 0.5 * abs_tol, depth - 1) +
         adaptive_rec(f, mid, b, right, 0.5 * abs_tol, depth - 1);
}

}  // namespace detail

// Adaptive bisection around nested GL64 panels; abs_tol is an absolute target
// on the whole interval.
template <class F>
auto adaptive(F&& f, double a, double b, double abs_tol, int max_depth = 24)
    -> decltype(f(a)) {
  using R = decltype(f(a));
  if (!(abs_tol > 0.0)) throw std::invalid_argument("quad::adaptive: abs_tol must be > 0");
  if (a == b) return R{};
  const R whole = gl64(f, a, b);
  return detail::adaptive_rec(f, a, b, whole, abs_tol, max_depth);
}

// Integral of f over (0, 1) where f(u) ~ u^e0 as u -> 0 and ~ (1-u)^e1 as
// u -> 1 with e0, e1 > -1.  Each half is mapped by a power substitution that
// makes the integrand bounded; nodes never touch 0 or 1.
template <class F>
auto unit_power(F&& f, double e0, double e1, double abs_tol) -> decltype(f(0.5)) {
  if (!(e0 > -1.0) || !(e1 > -1.0))
    throw std::invalid_argument("quad::unit_power: endpoint exponents must be > -1");
  using R = decltype(f(0.5));
  const double q0 = 1.0 + e0;
  const double q1 = 1.0 + e1;
  // Nodes whose image rounds onto an endpoint carry a bounded substituted
  // integrand over a vanishing region; skip them instead of evaluating f
  // where the power map has degenerated.
  // Left half: u = w^(1/q0), w in (0, (1/2)^q0).
  auto left = [&](double w) {
    const double u = std::pow(w, 1.0 / q0);
    if (u <= 0.0) return R{};
    return (1.0 / q0) * std::pow(w, 1.0 / q0 - 1.0) * f(u);
  };
  // Right half: u = 1 - v^(1/q1), v in (0, (1/2)^q1).
  auto right = [&](double v) {
    const double u = 1.0 - std::pow(v, 1.0 / q1);
    if (u >= 1.0) return R{};
    return (1.0 / q1) * std::pow(v, 1.0 / q1 - 1.0) * f(u);
  };
  return adaptive(left, 0.0, std::pow(0.5, q0), 0.5 * abs_tol) +
         adaptive(right, 0.0, std::pow(0.5, q1), 0.5 * abs_tol);
}

}  // namespace ftsm::quad
