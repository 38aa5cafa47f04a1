#include "modelball/deficits.hpp"

namespace modelball {

namespace {

DeficitReport summarize(const ModelBall& ball, const std::string& id,
                        const Array& pointwise, const Array& signed_gap,
                        double tol) {
  DeficitReport rep;
  rep.id = id;
  rep.tol = tol;
  int arg = 0;
  rep.sup = pointwise.maxCoeff(&arg);
  rep.sup_at = ball.grid.r(arg);
  rep.mean = volume_average(ball, pointwise);
  rep.violations = (signed_gap < -tol).count();
  if (!pointwise.allFinite())
    throw SolverError("deficit field is not finite: " + id);
  return rep;
}

}  // namespace

Array comparison_gap(const ModelBall& ball) {
  const int m = ball.nodes();
  Array gap(m);
  gap(0) = 0.0;
  for (int i = 1; i < m; ++i) {
    const double r = ball.grid.r(i);
    gap(i) = 1.0 - r * ball.fp(i) / ball.f(i);
  }
  return gap;
}

DeficitReport laplacian_r_deficit(const ModelBall& ball, double tol) {
  const int m = ball.nodes();
  const double c = ball.n - 1.0;
  Array d(m);
  d(0) = 0.0;
  for (int i = 1; i < m; ++i) {
    const double r = ball.grid.r(i);
    d(i) = c * (1.0 / r - ball.fp(i) / ball.f(i));
  }
  return summarize(ball, "laplacian-r", d.abs(), d, tol);
}

DeficitReport laplacian_r2_deficit(const ModelBall& ball, double tol) {
  const Array gap = comparison_gap(ball);
  const Array d = 2.0 * (ball.n - 1.0) * gap.abs();
  return summarize(ball, "laplacian-r2", d, gap, tol);
}

DeficitReport hessian_r2_deficit(const ModelBall& ball, double tol) {
  const Array gap = comparison_gap(ball);
  const Array d = 2.0 * std::sqrt(ball.n - 1.0) * gap.abs();
  return summarize(ball, "hessian-r2", d, gap, tol);
}

DeficitReport curvature_report(const ModelBall& ball, double tol) {
  const int m = ball.nodes();
  Array neg(m), ric_min(m);
  for (int i = 0; i < m; ++i) {
    const double r = ball.grid.r(i);
    const double v = std::min(ricci_radial(ball, r), ricci_tangential(ball, r));
    ric_min(i) = v;
    neg(i) = std::max(0.0, -v);
  }
  return summarize(ball, "ricci-negative-part", neg, ric_min, tol);
}

double polar_distortion(const ModelBall& ball) {
  double sup = 0.0;
  for (int i = 1; i < ball.nodes(); ++i)
    sup = std::max(sup, std::abs(ball.f(i) / ball.grid.r(i) - 1.0));
  return sup;
}

DeficitReport polar_distortion_report(const ModelBall& ball) {
  const int m = ball.nodes();
  Array d(m);
  d(0) = 0.0;
  for (int i = 1; i < m; ++i)
    d(i) = std::abs(ball.f(i) / ball.grid.r(i) - 1.0);
  return summarize(ball, "polar-distortion", d, Array::Zero(m), 0.0);
}

}  // namespace modelball
