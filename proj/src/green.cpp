#include "modelball/green.hpp"

#include "modelball/interpolate.hpp"
#include "modelball/quadrature.hpp"

namespace modelball {

double RadialGreen::deriv(double r) const {
  const auto& prof = ball->profile;
  return -1.0 /
         (unit_sphere_area(ball->n) * std::pow(prof.f(r), ball->n - 1));
}

double RadialGreen::deriv2(double r) const {
  const auto& prof = ball->profile;
  return (ball->n - 1) * prof.fp(r) /
         (unit_sphere_area(ball->n) * std::pow(prof.f(r), ball->n));
}

double RadialGreen::value(double r) const {
  const auto& g = ball->grid.nodes;
  const int m = static_cast<int>(g.size());
  if (!(r > 0.0)) throw ConfigError("Green's function diverges at the pole");
  if (r > ball->R * (1.0 + 1e-12))
    throw ConfigError("Green's function evaluated outside the ball");
  if (r >= g(m - 1)) return 0.0;
  // Cubic Hermite on the enclosing interval with the exact derivative.
  int lo = 1, hi = m - 1;
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    (g(mid) <= r ? lo : hi) = mid;
  }
  if (r < g(1)) {
    // Before the first positive node: integrate the short remainder directly.
    auto res = integrate_adaptive(
        [&](double t) {
          return -deriv(t);
        },
        r, g(1), 1e-12, 1e-15);
    return values(1) + res.value;
  }
  // Quintic Hermite with the exact first and second derivatives: the
  // interpolation error is h^6-scale, below the nodal quadrature budget.
  Array x(2), f(2), fp(2), fpp(2);
  x << g(lo), g(lo + 1);
  f << values(lo), values(lo + 1);
  fp << deriv(g(lo)), deriv(g(lo + 1));
  fpp << deriv2(g(lo)), deriv2(g(lo + 1));
  return QuinticHermite(x, f, fp, fpp).value(r);
}

RadialGreen radial_green(const BallPtr& ball, double rel_tol) {
  RadialGreen green;
  green.ball = ball;
  const auto& g = ball->grid.nodes;
  const int m = static_cast<int>(g.size());
  green.values = Array::Zero(m);
  const auto& prof = ball->profile;
  const double c = unit_sphere_area(ball->n);
  const int n = ball->n;
  // Panel-wise suffix accumulation keeps G(R) = 0 exact and G decreasing.
  // The apex panel is excluded: G diverges at the pole.
  double acc = 0.0, err = 0.0;
  for (int i = m - 1; i >= 2; --i) {
    auto res = integrate_adaptive(
        [&](double t) { return 1.0 / (c * std::pow(prof.f(t), n - 1)); },
        g(i - 1), g(i), rel_tol, 1e-300);
    if (!res.converged)
      throw SolverError("Green quadrature stalled on panel ending at r = " +
                        std::to_string(g(i)));
    acc += res.value;
    err += res.error;
    green.values(i - 1) = acc;
  }
  green.quad_error = err;
  green.values(0) = std::numeric_limits<double>::infinity();
  return green;
}

double green_delta_selftest(const RadialGreen& green,
                            const std::function<double(double)>& psi,
                            const std::function<double(double)>& psi_p,
                            const std::function<double(double)>& psi_pp) {
  const auto& ball = *green.ball;
  const double R = ball.R;
  if (std::abs(psi(R)) > 1e-13)
    throw ConfigError("self-test function must vanish at the boundary");
  const double c = unit_sphere_area(ball.n);
  const int n = ball.n;
  auto integrand = [&](double r) {
    const double f = ball.profile.f(r);
    const double lap =
        psi_pp(r) + (n - 1) * ball.profile.fp(r) / f * psi_p(r);
    return green.value(r) * lap * c * std::pow(f, n - 1);
  };
  auto res = integrate_adaptive(integrand, 1e-9 * R, R, 1e-9, 1e-12);
  return std::abs(res.value + psi(0.0));
}

double euclidean_green(int n, double d) {
  if (n < 2) throw ConfigError("euclidean_green needs n >= 2");
  if (!(d > 0.0) || d > 1.0)
    throw ConfigError("euclidean_green needs 0 < d <= 1");
  if (n == 2) return -std::log(d) / (2.0 * kPi);
  return (std::pow(d, 2 - n) - 1.0) /
         (n * (n - 2) * unit_ball_volume(n));
}

GreenComparison green_comparison(const RadialGreen& green, double tol) {
  const auto& ball = *green.ball;
  if (std::abs(ball.R - 1.0) > 1e-12)
    throw ConfigError("green_comparison is normalized to R = 1");
  const int m = ball.nodes();
  GreenComparison cmp;
  cmp.r = ball.grid.nodes;
  cmp.G = green.values;
  cmp.G_flat = Array::Zero(m);
  Array deficit = Array::Zero(m);
  for (int i = 1; i < m; ++i) {
    cmp.G_flat(i) = (i == m - 1) ? 0.0 : euclidean_green(ball.n, ball.grid.r(i));
    deficit(i) = green.values(i) - cmp.G_flat(i);
  }
  DeficitReport rep;
  rep.id = "green-vs-flat";
  rep.tol = tol;
  int arg = 1;
  rep.sup = deficit.segment(1, m - 1).maxCoeff(&arg);
  rep.sup_at = ball.grid.r(arg + 1);
  Array mean_field = deficit.abs();
  mean_field(0) = 0.0;  // weight vanishes at the apex; the product limit is 0
  rep.mean = volume_average(ball, mean_field);
  rep.violations = (deficit.segment(1, m - 1) < -tol).count();
  cmp.report = rep;
  int argmin = 0;
  cmp.min_deficit = deficit.segment(1, m - 2).minCoeff(&argmin);
  cmp.min_at = ball.grid.r(argmin + 1);
  cmp.interior_min = std::numeric_limits<double>::infinity();
  for (int i = 1; i < m; ++i) {
    const double r = ball.grid.r(i);
    if (r >= 0.25 * ball.R && r <= 0.75 * ball.R)
      cmp.interior_min = std::min(cmp.interior_min, deficit(i));
  }
  return cmp;
}

BGradientReport b_boundary_gradient(const RadialGreen& green) {
  const auto& ball = *green.ball;
  if (ball.n < 3)
    throw ConfigError("the b-function is defined for n >= 3 only");
  if (std::abs(ball.R - 1.0) > 1e-12)
    throw ConfigError("b_boundary_gradient is normalized to R = 1");
  BGradientReport rep;
  const int n = ball.n;
  const double nwn = unit_sphere_area(n);
  // b = (C(n) G + 1)^{1/(2-n)} with C(n) = (2-n) n omega_n; at the boundary
  // G = 0 and b' = -C(n) G' / (n-2) = n omega_n |G'(R)| = f(R)^{1-n}.
  rep.sup_grad = nwn * std::abs(green.deriv(ball.R));
  rep.bound = nwn / sphere_area(ball, ball.R);
  rep.rigidity_flat = rep.sup_grad <= 1.0 + 1e-12;
  return rep;
}

}  // namespace modelball
