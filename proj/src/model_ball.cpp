#include "modelball/model_ball.hpp"

#include "modelball/quadrature.hpp"

namespace modelball {

BallPtr make_ball(const WarpingProfile& profile, int n, double R, int segments,
                  Spacing spacing, double tol_curv) {
  if (n < 2) throw ConfigError("dimension must be >= 2");
  if (!(R > 0.0)) throw ConfigError("ball radius must be positive");
  if (R > profile.domain_max())
    throw ConfigError("ball radius exceeds the profile domain (domain_max = " +
                      std::to_string(profile.domain_max()) + ")");
  auto ball = std::make_shared<ModelBall>();
  ball->profile = profile;
  ball->n = n;
  ball->R = R;
  ball->grid = spacing == Spacing::Uniform
                   ? RadialGrid::uniform(R, segments)
                   : RadialGrid::end_refined(R, segments);
  const int m = ball->nodes();
  ball->f.resize(m);
  ball->fp.resize(m);
  ball->fpp.resize(m);
  for (int i = 0; i < m; ++i) {
    const double r = ball->grid.r(i);
    ball->f(i) = profile.f(r);
    ball->fp(i) = profile.fp(r);
    ball->fpp(i) = profile.fpp(r);
    if (i > 0 && !(ball->f(i) > 0.0))
      throw ConfigError("profile not positive at grid node r = " +
                        std::to_string(r));
  }
  if (n >= 3) {
    for (int i = 1; i < m; ++i) {
      const double r = ball->grid.r(i);
      const double rad = ricci_radial(*ball, r);
      const double tan = ricci_tangential(*ball, r);
      if (rad < -tol_curv || tan < -tol_curv)
        throw ConfigError("Ricci admission fails at r = " + std::to_string(r) +
                          " (radial " + std::to_string(rad) + ", tangential " +
                          std::to_string(tan) + ")");
    }
  }
  return ball;
}

double ricci_radial(const ModelBall& ball, double r) {
  if (r == 0.0) return -(ball.n - 1) * 6.0 * ball.profile.a3();
  return -(ball.n - 1) * ball.profile.fpp(r) / ball.profile.f(r);
}

double ricci_tangential(const ModelBall& ball, double r) {
  const double n = ball.n;
  if (r == 0.0) {
    // Series limits: f''/f -> 6 a3 and (1 - f'^2)/f^2 -> -6 a3.
    return -6.0 * ball.profile.a3() * (n - 1.0);
  }
  const double f = ball.profile.f(r);
  const double fp = ball.profile.fp(r);
  const double fpp = ball.profile.fpp(r);
  return -fpp / f + (n - 2) * (1.0 - fp * fp) / (f * f);
}

double laplacian_distance(const ModelBall& ball, double r) {
  if (!(r > 0.0))
    throw ConfigError("laplacian of distance is undefined at r = 0");
  if (r > ball.R * (1.0 + 1e-12))
    throw ConfigError("evaluation radius outside the ball");
  return (ball.n - 1) * ball.profile.fp(r) / ball.profile.f(r);
}

double sphere_area(const ModelBall& ball, double r) {
  if (r < 0.0 || r > ball.R * (1.0 + 1e-12))
    throw ConfigError("sphere_area radius outside [0, R]");
  return unit_sphere_area(ball.n) * std::pow(ball.profile.f(r), ball.n - 1);
}

double ball_volume(const ModelBall& ball, double r) {
  if (r < 0.0 || r > ball.R * (1.0 + 1e-12))
    throw ConfigError("ball_volume radius outside [0, R]");
  if (r == 0.0) return 0.0;
  const auto& prof = ball.profile;
  const int n = ball.n;
  const double c = unit_sphere_area(n);
  auto result = integrate_adaptive(
      [&](double t) { return c * std::pow(prof.f(t), n - 1); }, 0.0, r,
      tol::quadrature_rel);
  if (!result.converged)
    throw SolverError("ball volume quadrature did not reach tolerance");
  return result.value;
}

Array area_weights(const ModelBall& ball) {
  Array w(ball.nodes());
  const double c = unit_sphere_area(ball.n);
  for (int i = 0; i < ball.nodes(); ++i)
    w(i) = c * std::pow(ball.f(i), ball.n - 1);
  return w;
}

double volume_average(const ModelBall& ball, const Array& values) {
  if (values.size() != ball.nodes())
    throw ConfigError("volume_average: nodal value count mismatch");
  const Array w = area_weights(ball);
  const double vol = simpson(ball.grid.nodes, w);
  return simpson(ball.grid.nodes, (values * w).eval()) / vol;
}

}  // namespace modelball
