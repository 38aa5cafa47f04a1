#ifndef MODELBALL_QUADRATURE_HPP
#define MODELBALL_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <functional>

namespace modelball {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;   // accumulated estimate
  bool converged = true;
};

namespace detail {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
inline constexpr double kGK15Node[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993945, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
inline constexpr double kGK15Weight[8] = {
    0.02293532201052922, 0.06309209262997855, 0.10479001032225018,
    0.14065325971552592, 0.1690047266392679,  0.19035057806478542,
    0.20443294007529889, 0.20948214108472782};
inline constexpr double kG7Weight[4] = {
    0.12948496616886969, 0.2797053914892766, 0.3818300505051189,
    0.4179591836734694};

template <class F>
inline void gk15(const F& f, double a, double b, double& i15, double& i7) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  i15 = kGK15Weight[7] * fc;
  i7 = kG7Weight[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double fl = f(c - h * kGK15Node[j]);
    const double fr = f(c + h * kGK15Node[j]);
    i15 += kGK15Weight[j] * (fl + fr);
    if (j % 2 == 1) i7 += kG7Weight[j / 2] * (fl + fr);
  }
  i15 *= h;
  i7 *= h;
}

template <class F>
inline void adapt(const F& f, double a, double b, double tol, int depth,
                  QuadResult& out) {
  double i15, i7;
  gk15(f, a, b, i15, i7);
  const double err = std::abs(i15 - i7);
  if (err <= tol || depth >= 48) {
    out.value += i15;
    out.error += err;
    if (err > tol) out.converged = false;
    return;
  }
  const double c = 0.5 * (a + b);
  adapt(f, a, c, 0.5 * tol, depth + 1, out);
  adapt(f, c, b, 0.5 * tol, depth + 1, out);
}

}  // namespace detail

// Adaptive Gauss-Kronrod integration of f over [a, b].  The target tolerance
// is abs_tol plus rel_tol scaled by a first-pass magnitude estimate.
template <class F>
QuadResult integrate_adaptive(const F& f, double a, double b,
                              double rel_tol = 1e-11, double abs_tol = 0.0) {
  QuadResult out;
  if (a == b) return out;
  double i15, i7;
  detail::gk15(f, a, b, i15, i7);
  const double scale = std::max(std::abs(i15), 1e-300);
  const double tol = std::max(abs_tol, rel_tol * scale);
  detail::adapt(f, a, b, tol, 0, out);
  return out;
}

}  // namespace modelball

#endif
