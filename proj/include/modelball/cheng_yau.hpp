#ifndef MODELBALL_CHENG_YAU_HPP
#define MODELBALL_CHENG_YAU_HPP

#include "modelball/fourier_harmonic.hpp"

namespace modelball {

// Quotient field q = (1 - (r/R)^2) * R * |grad ln u| / 2 on the evaluation
// lattice (the estimate is stated on the unit ball; r/R rescaling induces the
// factor R on the gradient).  Sharp bound: q <= 1.
struct ChengYauReport {
  DeficitReport report;       // sup/mean of q; violations count q > 1 + tol
  double argmax_theta = 0.0;  // angular location of the sup
  double onray_sup = 0.0;     // sup of q restricted to the angle `ray_angle`
  double ray_angle = 0.0;
};

ChengYauReport cheng_yau_deficit(const FourierHarmonic& u, double tol,
                                 double ray_angle = 0.0);

// Volume average over the evaluation region of
//   (4/(1-r^2)^2 - |grad ln u|^2) + ln(2 / ((1-r^2) |grad ln u|)),
// both summands nonnegative by the sharp bound; zero exactly for the flat
// Poisson kernel.  Lattice points with |grad ln u| <= eps_log are excluded
// and their measure fraction reported.
struct StabilityDeficit {
  double delta = 0.0;
  double excluded_fraction = 0.0;
  bool reliable = true;  // false if the excluded set exceeds 1 percent
};

StabilityDeficit cheng_yau_stability(const FourierHarmonic& u);

// Interior residual of Delta v >= 2 e^v for v = ln |grad ln u|^2, via a
// 5-point metric stencil of step h_fd; tol_fd is certified by comparing the
// h and h/2 stencils (Richardson).  Points with Q <= eps_q are excluded.
struct VInequalityReport {
  DeficitReport report;    // deficit = max(0, 2 e^v - Delta v) at fine step
  double min_residual = 0.0;
  double tol_fd = 0.0;
  double worst_violation_coarse = 0.0;
  double worst_violation_fine = 0.0;
  double excluded_fraction = 0.0;
};

VInequalityReport v_inequality_residual(const FourierHarmonic& u,
                                        double h_fd_frac = 1.0 / 256.0);

}  // namespace modelball

#endif
