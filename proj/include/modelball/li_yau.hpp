#ifndef MODELBALL_LI_YAU_HPP
#define MODELBALL_LI_YAU_HPP

#include "modelball/heat.hpp"

namespace modelball {

// Pointwise Li-Yau quantity along the radial direction, by two routes:
//   q_time  = (ln u)_t - |grad ln u|^2 + n/(2t)   (time difference)
//   q_space = lap(ln u) + n/(2t)                  (spatial stencil)
// The routes agree up to discretization error; both are >= 0 when the
// estimate holds. g_q() is the equivalent quantity t*lap(-ln u) - n/2,
// which is <= 0 exactly when q_space >= 0.
struct LiYauField {
  Array r;
  Array q_time;
  Array q_space;
  double t = 0.0;
  double min_time = 0.0;
  double min_space = 0.0;
  double min_at = 0.0;            // radius of the q_time minimum
  double interior_min_time = 0.0;  // over r in [R/4, 3R/4]
  double interior_min_space = 0.0;
  double interior_max_space = 0.0;
  double route_gap = 0.0;  // sup |q_time - q_space| over the interior band

  Array g_q() const { return -t * q_space; }
};

LiYauField li_yau_quantity(const HeatField& field, double t_eval,
                           double rmax_frac = 0.9, double u_floor_rel = 1e-8);

// Analytic Li-Yau quantity of the flat heat kernel, assembled term by term;
// identically zero up to roundoff.
double li_yau_kernel_quantity(int n, double r, double t);

// Harnack ratio u(x2,t2) (t2/t1)^(n/2) exp(d^2/(4(t2-t1))) / u(x1,t1);
// the estimate says >= 1, with equality along x1 = (t1/t2) x2 for the
// flat kernel centered at the origin.
double harnack_ratio(const HeatField& field, double r1, double t1, double r2,
                     double t2);
double harnack_ratio_kernel(int n, double r1, double t1, double r2, double t2);

}  // namespace modelball

#endif
