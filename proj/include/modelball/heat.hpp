#ifndef MODELBALL_HEAT_HPP
#define MODELBALL_HEAT_HPP

#include <functional>
#include <vector>

#include "modelball/model_ball.hpp"

namespace modelball {

enum class HeatBC { Dirichlet, TruncatedNeumann };

const char* to_string(HeatBC bc);

struct HeatOptions {
  int steps = 1024;
  HeatBC bc = HeatBC::Dirichlet;
  // Times whose solution rows should be kept; each is rounded to the nearest
  // step boundary. The last three step times are always kept.
  std::vector<double> snapshot_times;
};

// Radial heat flow on a model ball: finite-volume in space (node-centered,
// flux through sphere areas), Crank-Nicolson in time with a backward-Euler
// fallback on any step that would lose positivity.
struct HeatField {
  BallPtr ball;
  HeatBC bc = HeatBC::Dirichlet;
  double t0 = 0.0;
  double t_end = 0.0;
  double dt = 0.0;
  int steps = 0;
  int be_fallbacks = 0;
  Array cell_mass;   // finite-volume cell masses, one per node
  Array times;       // snapshot times, increasing
  Matrix U;          // one row per snapshot time, one column per node
  double min_value = 0.0;   // over every step taken, not just snapshots
  double mass_drift = 0.0;  // worst per-step relative mass increase

  int row_at(double t) const;           // exact snapshot lookup
  double value(double r, double t) const;  // cubic interpolation in r
  double mass_at_row(int row) const;
};

HeatField heat_solve_radial(BallPtr ball,
                            const std::function<double(double)>& u0,
                            double t0, double t_end, const HeatOptions& opt);

// (4 pi t)^(-n/2) exp(-d^2 / (4t)) on flat space.
double euclidean_heat_kernel(int n, double d, double t);

}  // namespace modelball

#endif
