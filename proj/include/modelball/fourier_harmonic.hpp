#ifndef MODELBALL_FOURIER_HARMONIC_HPP
#define MODELBALL_FOURIER_HARMONIC_HPP

#include "modelball/model_ball.hpp"
#include "modelball/report.hpp"

#include <string>
#include <vector>

namespace modelball {

// Radial factor of the k-th Fourier mode on a 2-D model ball:
//   phi'' + (f'/f) phi' - (k^2/f^2) phi = 0,  phi(R) = 1,  phi ~ c r^k at 0.
struct RadialMode {
  int k = 0;
  Array phi, dphi;          // at the grid nodes
  Array d2phi;              // from the ODE; slope data for interpolating dphi
  double residual_sup = 0;  // scaled ODE defect via Hermite reconstruction
};

// Solves the mode equation by integrating the log-derivative (Riccati) form
// from a two-term Frobenius launch at the first node; overflow-free in k.
RadialMode solve_mode(const BallPtr& ball, int k, double rtol = 1e-12);

// Boundary Fourier data.  Explicit lists are checked for a positive minimum
// on a 4096-point boundary lattice.  The poisson descriptor stands for the
// full kernel of a boundary pole (positive as a boundary measure); truncation
// happens at K_max with the dropped tail recorded.
struct BoundaryData {
  struct Term {
    int k;
    double a, b;
  };
  std::vector<Term> terms;
  bool analytic_poisson = false;
  double pole_angle = 0.0;

  static BoundaryData constant(double a0);
  static BoundaryData cosine(double a0, double a1, double b2 = 0.0);
  static BoundaryData poisson(double pole_angle);
  static BoundaryData from_csv(const std::string& text);

  double eval(double theta, int K_max) const;
};

// Mode-sum harmonic function on a 2-D model ball with its evaluation lattice
// (grid radii in (0, eval_rmax] x uniform angles) and positivity certificate.
struct FourierHarmonic {
  BallPtr ball;
  std::vector<RadialMode> modes;  // k = 0..K_max
  Array a, b;                     // coefficients, index = k
  int K_max = 64;
  double eval_rmax = 0.0;
  int lat_r0 = 1;                 // first radial lattice index into the grid
  Array lat_r;                    // lattice radii
  Array lat_theta;                // lattice angles
  double min_u = 0.0;             // positivity certificate on the lattice
  double dropped_tail = 0.0;      // |a|+|b| mass beyond K_max

  double value(double r, double theta) const;
  // Metric gradient pieces: du/dr and (du/dtheta)/f.
  void gradient(double r, double theta, double& ur, double& ut_over_f) const;
  double log_gradient(double r, double theta) const;

  Matrix value_lattice() const;
  Matrix q_lattice() const;  // |grad ln u|^2 on the lattice
};

struct HarmonicOptions {
  int K_max = 64;
  int ntheta = 512;
  // Lattice cap: the gradient tail of a truncated kernel peaks opposite the
  // pole at ~K (r/R)^K (1+r/R)^2 / (1-r/R); 0.70 keeps it below 1e-7 at the
  // default K_max.
  double eval_rmax_frac = 0.70;
  double rtol = 1e-12;
};

FourierHarmonic harmonic_from_boundary(const BallPtr& ball,
                                       const BoundaryData& data,
                                       const HarmonicOptions& opts = {});

// Flat-disk Poisson kernel (pole y on the unit circle at angle y_angle).
double poisson_kernel_flat(double r, double theta, double y_angle);

}  // namespace modelball

#endif
