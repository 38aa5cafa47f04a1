#ifndef MODELBALL_DEFICITS_HPP
#define MODELBALL_DEFICITS_HPP

#include "modelball/model_ball.hpp"
#include "modelball/report.hpp"

namespace modelball {

// Pointwise 1 - r f'/f sampled on the grid (zero at the apex by the series
// limit); the common factor in the comparison deficits below.
Array comparison_gap(const ModelBall& ball);

// Sup and volume average of (n-1)/r - Delta r = (n-1)(1/r - f'/f) >= 0.
DeficitReport laplacian_r_deficit(const ModelBall& ball,
                                  double tol = tol::curvature);
// 2n - Delta(r^2) = 2(n-1)|1 - r f'/f|.
DeficitReport laplacian_r2_deficit(const ModelBall& ball,
                                   double tol = tol::curvature);
// |Hess(r^2) - 2g| = 2 sqrt(n-1) |1 - r f'/f|.
DeficitReport hessian_r2_deficit(const ModelBall& ball,
                                 double tol = tol::curvature);

// Negative part of min(Ric_radial, Ric_tangential); sup must stay within
// tol_curv for admitted profiles.
DeficitReport curvature_report(const ModelBall& ball,
                               double tol = tol::curvature);

// sup over positive grid nodes of |f(r)/r - 1|: explicit distance-distortion
// proxy between the model ball and the flat ball of the same radius.
double polar_distortion(const ModelBall& ball);
DeficitReport polar_distortion_report(const ModelBall& ball);

}  // namespace modelball

#endif
