#ifndef MODELBALL_GREEN_HPP
#define MODELBALL_GREEN_HPP

#include "modelball/model_ball.hpp"
#include "modelball/report.hpp"

#include <functional>

namespace modelball {

// Radial Dirichlet Green's function with pole at the center:
//   G(r) = \int_r^R dt / (n omega_n f(t)^{n-1}),  G' = -1/(n omega_n f^{n-1}),
// so the flux identity A(r) |G'(r)| = 1 holds exactly by construction.
struct RadialGreen {
  BallPtr ball;
  Array values;  // G at the grid nodes (values(0) is +inf conceptually; unset)
  double quad_error = 0.0;

  double value(double r) const;   // quintic Hermite between nodes, exact G', G''
  double deriv(double r) const;   // exact
  double deriv2(double r) const;  // exact
};

RadialGreen radial_green(const BallPtr& ball,
                         double rel_tol = tol::quadrature_rel);

// Checks \int_B G \Delta psi dV = -psi(0) for a smooth radial psi with
// psi(R) = 0 and psi'(0) = 0; returns |defect|.
double green_delta_selftest(const RadialGreen& green,
                            const std::function<double(double)>& psi,
                            const std::function<double(double)>& psi_p,
                            const std::function<double(double)>& psi_pp);

// Flat-ball Green's function at distance d from the center, radius 1.
double euclidean_green(int n, double d);

struct GreenComparison {
  DeficitReport report;       // pointwise G - G_flat >= 0
  double min_deficit = 0.0;   // over interior nodes
  double min_at = 0.0;
  double interior_min = 0.0;  // over the fixed band [R/4, 3R/4]
  Array r, G, G_flat;         // table for CSV export
};

// Requires R = 1 (the comparison is normalized to the unit ball).
GreenComparison green_comparison(const RadialGreen& green, double tol = 1e-8);

struct BGradientReport {
  double sup_grad = 0.0;   // |b'(R)| = f(R)^{1-n}
  double bound = 0.0;      // n omega_n / A(R)
  bool rigidity_flat = false;
};

// Boundary gradient of b = (C(n) G + 1)^{1/(2-n)}, n >= 3 only.
BGradientReport b_boundary_gradient(const RadialGreen& green);

}  // namespace modelball

#endif
