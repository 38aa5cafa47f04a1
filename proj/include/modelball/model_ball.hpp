#ifndef MODELBALL_MODEL_BALL_HPP
#define MODELBALL_MODEL_BALL_HPP

#include "modelball/radial_grid.hpp"
#include "modelball/warping_profile.hpp"

#include <memory>

namespace modelball {

// Geodesic ball of radius R in the n-dimensional model with warping profile
// f.  Construction validates admission: R within the profile domain, f > 0 at
// every positive grid node, and (n >= 3) both Ricci expressions bounded below
// by -tol_curv.  Immutable after construction.
struct ModelBall {
  WarpingProfile profile;
  int n = 2;
  double R = 1.0;
  RadialGrid grid;
  Array f, fp, fpp;  // profile sampled at the grid nodes

  int nodes() const { return static_cast<int>(grid.nodes.size()); }
};

using BallPtr = std::shared_ptr<const ModelBall>;

BallPtr make_ball(const WarpingProfile& profile, int n, double R, int segments,
                  Spacing spacing = Spacing::Uniform,
                  double tol_curv = tol::curvature);

// Ric(∂r, ∂r) on unit radial vectors: -(n-1) f''/f.
double ricci_radial(const ModelBall& ball, double r);
// Tangential Ricci: -f''/f + (n-2)(1 - f'^2)/f^2.
double ricci_tangential(const ModelBall& ball, double r);

// Laplacian of the distance function, (n-1) f'/f; r = 0 rejected.
double laplacian_distance(const ModelBall& ball, double r);

// Geodesic sphere area A(r) = n omega_n f(r)^{n-1}.
double sphere_area(const ModelBall& ball, double r);
// Ball volume V(r) = \int_0^r A; adaptive quadrature at 1e-11 relative.
double ball_volume(const ModelBall& ball, double r);

// Volume element weights A(r_i) at the grid nodes (for Simpson averages).
Array area_weights(const ModelBall& ball);

// Volume average of nodal values over the ball via composite Simpson with
// the metric weight.
double volume_average(const ModelBall& ball, const Array& values);

}  // namespace modelball

#endif
