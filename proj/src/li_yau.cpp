#include "modelball/li_yau.hpp"

#include <cmath>

namespace modelball {

LiYauField li_yau_quantity(const HeatField& field, double t_eval,
                           double rmax_frac, double u_floor_rel) {
  const auto& ball = *field.ball;
  const int n = ball.n;
  const auto& x = ball.grid.nodes;
  const int m = static_cast<int>(x.size());
  const double dt = field.dt;
  const int rc = field.row_at(t_eval);
  const int rm = field.row_at(t_eval - dt);
  const int rp = field.row_at(t_eval + dt);

  const Array uc = field.U.row(rc).transpose();
  const Array um = field.U.row(rm).transpose();
  const Array up = field.U.row(rp).transpose();
  const double floor = u_floor_rel * uc.maxCoeff();
  if (floor <= 0.0) throw SolverError("heat field vanished before evaluation");

  std::vector<int> idx;
  for (int i = 0; i < m; ++i) {
    if (x(i) > rmax_frac * ball.R) break;
    if (uc(i) >= floor && um(i) >= floor && up(i) >= floor) idx.push_back(i);
  }
  // Trailing nodes only: the admitted set must stay contiguous from the apex
  // so the three-point stencils below always have admitted neighbours.
  for (size_t k = 1; k < idx.size(); ++k)
    if (idx[k] != idx[k - 1] + 1) {
      idx.resize(k);
      break;
    }
  if (idx.size() < 8) throw SolverError("li-yau evaluation range is empty");
  const int ne = static_cast<int>(idx.size());

  Array w(ne), wt(ne);
  for (int k = 0; k < ne; ++k) {
    w(k) = std::log(uc(idx[k]));
    wt(k) = (std::log(up(idx[k])) - std::log(um(idx[k]))) / (2.0 * dt);
  }

  LiYauField out;
  out.t = t_eval;
  out.r.resize(ne);
  out.q_time.resize(ne);
  out.q_space.resize(ne);
  const double zero_order = n / (2.0 * t_eval);
  for (int k = 0; k < ne; ++k) {
    const int i = idx[k];
    out.r(k) = x(i);
    double wp, wpp;
    if (k == 0 && i == 0) {
      // Symmetric apex: w'(0) = 0 and lap w = n w''.
      const double h = x(1) - x(0);
      wp = 0.0;
      wpp = 2.0 * (w(1) - w(0)) / (h * h);
      out.q_space(k) = n * wpp + zero_order;
    } else if (k == 0 || k + 1 == ne) {
      // One-sided ends carry no useful stencil; copy the neighbour later.
      out.q_space(k) = 0.0;
      wp = 0.0;
    } else {
      const double h0 = x(i) - x(i - 1);
      const double h1 = x(i + 1) - x(i);
      wp = (w(k + 1) * h0 * h0 - w(k - 1) * h1 * h1 +
            w(k) * (h1 * h1 - h0 * h0)) /
           (h0 * h1 * (h0 + h1));
      wpp = 2.0 * (w(k - 1) * h1 + w(k + 1) * h0 - w(k) * (h0 + h1)) /
            (h0 * h1 * (h0 + h1));
      out.q_space(k) = wpp + laplacian_distance(ball, x(i)) * wp + zero_order;
    }
    out.q_time(k) = wt(k) - wp * wp + zero_order;
  }
  // Patch the stencil-less end values from their neighbours.
  if (idx[0] != 0) {
    out.q_space(0) = out.q_space(1);
    out.q_time(0) = out.q_time(1);
  }
  out.q_space(ne - 1) = out.q_space(ne - 2);
  out.q_time(ne - 1) = out.q_time(ne - 2);

  Eigen::Index at = 0;
  out.min_time = out.q_time.minCoeff(&at);
  out.min_at = out.r(at);
  out.min_space = out.q_space.minCoeff();
  // Route consistency and band statistics live on [R/4, 3R/4]: outside it the
  // truncation wall (or the apex patch) dominates both routes.
  out.route_gap = 0.0;
  out.interior_min_time = 1e300;
  out.interior_min_space = 1e300;
  out.interior_max_space = -1e300;
  for (int k = 0; k < ne; ++k) {
    if (out.r(k) < 0.25 * ball.R || out.r(k) > 0.75 * ball.R) continue;
    out.route_gap =
        std::max(out.route_gap, std::abs(out.q_time(k) - out.q_space(k)));
    out.interior_min_time = std::min(out.interior_min_time, out.q_time(k));
    out.interior_min_space = std::min(out.interior_min_space, out.q_space(k));
    out.interior_max_space = std::max(out.interior_max_space, out.q_space(k));
  }
  return out;
}

double li_yau_kernel_quantity(int n, double r, double t) {
  const double lnu_t = -n / (2.0 * t) + r * r / (4.0 * t * t);
  const double grad2 = (r / (2.0 * t)) * (r / (2.0 * t));
  return lnu_t - grad2 + n / (2.0 * t);
}

double harnack_ratio(const HeatField& field, double r1, double t1, double r2,
                     double t2) {
  if (!(t2 > t1)) throw ConfigError("harnack ratio needs t2 > t1");
  const double u1 = field.value(r1, t1);
  const double u2 = field.value(r2, t2);
  if (u1 <= 0.0 || u2 <= 0.0)
    throw SolverError("harnack ratio needs positive field values");
  const double d = std::abs(r2 - r1);
  const int n = field.ball->n;
  return u2 / u1 * std::pow(t2 / t1, 0.5 * n) *
         std::exp(d * d / (4.0 * (t2 - t1)));
}

double harnack_ratio_kernel(int n, double r1, double t1, double r2,
                            double t2) {
  if (!(t2 > t1)) throw ConfigError("harnack ratio needs t2 > t1");
  const double u1 = euclidean_heat_kernel(n, r1, t1);
  const double u2 = euclidean_heat_kernel(n, r2, t2);
  const double d = std::abs(r2 - r1);
  return u2 / u1 * std::pow(t2 / t1, 0.5 * n) *
         std::exp(d * d / (4.0 * (t2 - t1)));
}

}  // namespace modelball
