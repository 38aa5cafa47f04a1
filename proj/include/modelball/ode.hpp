#ifndef MODELBALL_ODE_HPP
#define MODELBALL_ODE_HPP

#include "modelball/common.hpp"

#include <algorithm>

namespace modelball {

// Adaptive Dormand-Prince 5(4) for small systems.  Integrates y' = f(t, y)
// from x0 through every node in xs (ascending), recording the state at each.
// RHS signature: Vec f(double t, const Vec& y).
template <int N, class F>
Eigen::Matrix<double, Eigen::Dynamic, N> integrate_nodes(
    const F& f, Eigen::Matrix<double, N, 1> y, const Array& xs, double rtol,
    double atol) {
  using Vec = Eigen::Matrix<double, N, 1>;
  const int m = static_cast<int>(xs.size());
  Eigen::Matrix<double, Eigen::Dynamic, N> out(m, N);
  out.row(0) = y.transpose();
  double x = xs(0);
  double h_free = std::max((xs(m - 1) - xs(0)) * 1e-4, 1e-12);
  Vec k1 = f(x, y);
  for (int target = 1; target < m; ++target) {
    const double xt = xs(target);
    while (x < xt) {
      if (xt - x <= 1e-14 * (std::abs(xt) + 1.0)) {
        x = xt;
        break;
      }
      double h = std::min(h_free, xt - x);
      bool accepted = false;
      int tries = 0;
      while (!accepted) {
        if (++tries > 400 || !(h > std::abs(x) * 1e-15 + 1e-300))
          throw SolverError("ode step size underflow near r = " +
                            std::to_string(x));
        const Vec k2 = f(x + h * 0.2, y + h * (0.2 * k1));
        const Vec k3 = f(x + h * 0.3, y + h * (3.0 / 40 * k1 + 9.0 / 40 * k2));
        const Vec k4 = f(x + h * 0.8,
                         y + h * (44.0 / 45 * k1 - 56.0 / 15 * k2 + 32.0 / 9 * k3));
        const Vec k5 =
            f(x + h * 8.0 / 9,
              y + h * (19372.0 / 6561 * k1 - 25360.0 / 2187 * k2 +
                       64448.0 / 6561 * k3 - 212.0 / 729 * k4));
        const Vec k6 =
            f(x + h, y + h * (9017.0 / 3168 * k1 - 355.0 / 33 * k2 +
                              46732.0 / 5247 * k3 + 49.0 / 176 * k4 -
                              5103.0 / 18656 * k5));
        const Vec y5 = y + h * (35.0 / 384 * k1 + 500.0 / 1113 * k3 +
                                125.0 / 192 * k4 - 2187.0 / 6784 * k5 +
                                11.0 / 84 * k6);
        const Vec k7 = f(x + h, y5);
        const Vec y4 = y + h * (5179.0 / 57600 * k1 + 7571.0 / 16695 * k3 +
                                393.0 / 640 * k4 - 92097.0 / 339200 * k5 +
                                187.0 / 2100 * k6 + 1.0 / 40 * k7);
        double err = 0.0;
        for (int c = 0; c < N; ++c) {
          const double sc =
              atol + rtol * std::max(std::abs(y(c)), std::abs(y5(c)));
          const double e = (y5(c) - y4(c)) / sc;
          err += e * e;
        }
        err = std::sqrt(err / N);
        if (err <= 1.0) {
          x += h;
          y = y5;
          k1 = k7;  // FSAL
          accepted = true;
        }
        const double fac =
            std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
        h *= fac;
        h_free = h;
      }
    }
    out.row(target) = y.transpose();
    x = xt;
  }
  return out;
}

}  // namespace modelball

#endif
