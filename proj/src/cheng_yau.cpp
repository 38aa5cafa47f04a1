#include "modelball/cheng_yau.hpp"

#include "modelball/interpolate.hpp"

namespace modelball {

namespace {

Array trapezoid_weights(const Array& x) {
  const int n = static_cast<int>(x.size());
  Array w = Array::Zero(n);
  for (int i = 0; i + 1 < n; ++i) {
    const double h = x(i + 1) - x(i);
    w(i) += 0.5 * h;
    w(i + 1) += 0.5 * h;
  }
  return w;
}

// U, dU/dr, dU/dtheta on the lattice angles at a fixed set of radii obtained
// by mode interpolation (exact at grid nodes).
struct Station {
  Matrix U, Ur, Ut;
  Array f;
};

Station station_at(const FourierHarmonic& u, const Array& radii) {
  const int nr = static_cast<int>(radii.size());
  const int nt = static_cast<int>(u.lat_theta.size());
  const int K = u.K_max;
  Matrix Phi(nr, K + 1), DPhi(nr, K + 1), Ang(K + 1, nt), DAng(K + 1, nt);
  const auto& grid = u.ball->grid.nodes;
  for (int k = 0; k <= K; ++k) {
    const bool active = (k == 0) || u.a(k) != 0.0 || u.b(k) != 0.0;
    for (int i = 0; i < nr; ++i) {
      if (!active) {
        Phi(i, k) = DPhi(i, k) = 0.0;
        continue;
      }
      if (k == 0) {
        Phi(i, k) = 1.0;
        DPhi(i, k) = 0.0;
      } else {
        double v, d, drop;
        cubic_hermite(grid, u.modes[k].phi, u.modes[k].dphi, radii(i), v, drop);
        cubic_hermite(grid, u.modes[k].dphi, u.modes[k].d2phi, radii(i), d,
                      drop);
        Phi(i, k) = v;
        DPhi(i, k) = d;
      }
    }
    for (int j = 0; j < nt; ++j) {
      const double c = std::cos(k * u.lat_theta(j));
      const double s = std::sin(k * u.lat_theta(j));
      Ang(k, j) = u.a(k) * c + u.b(k) * s;
      DAng(k, j) = k * (-u.a(k) * s + u.b(k) * c);
    }
  }
  Station st;
  st.U = Phi * Ang;
  st.Ur = DPhi * Ang;
  st.Ut = Phi * DAng;
  st.f.resize(nr);
  for (int i = 0; i < nr; ++i) st.f(i) = u.ball->profile.f(radii(i));
  return st;
}

Matrix q_of(const Station& st) {
  const int nr = static_cast<int>(st.U.rows());
  const int nt = static_cast<int>(st.U.cols());
  Matrix Q(nr, nt);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nt; ++j) {
      const double g2 = st.Ur(i, j) * st.Ur(i, j) +
                        st.Ut(i, j) * st.Ut(i, j) / (st.f(i) * st.f(i));
      Q(i, j) = g2 / (st.U(i, j) * st.U(i, j));
    }
  return Q;
}

}  // namespace

ChengYauReport cheng_yau_deficit(const FourierHarmonic& u, double tol,
                                 double ray_angle) {
  const auto& ball = *u.ball;
  const double R = ball.R;
  const Matrix Q = u.q_lattice();
  const int nr = static_cast<int>(u.lat_r.size());
  const int nt = static_cast<int>(u.lat_theta.size());
  Matrix q(nr, nt);
  for (int i = 0; i < nr; ++i) {
    const double rh = u.lat_r(i) / R;
    const double factor = (1.0 - rh * rh) * R * 0.5;
    for (int j = 0; j < nt; ++j) q(i, j) = factor * std::sqrt(Q(i, j));
  }
  ChengYauReport out;
  out.ray_angle = ray_angle;
  Eigen::Index bi = 0, bj = 0;
  out.report.id = "cheng-yau-quotient";
  out.report.sup = q.maxCoeff(&bi, &bj);
  out.report.sup_at = u.lat_r(bi);
  out.argmax_theta = u.lat_theta(bj);
  out.report.tol = tol;
  out.report.violations = (q.array() > 1.0 + tol).count();
  // Volume average over the evaluation region (theta lattice is uniform).
  Array wr = trapezoid_weights(u.lat_r);
  double num = 0.0, den = 0.0;
  for (int i = 0; i < nr; ++i) {
    const double w = wr(i) * ball.f(u.lat_r0 + i);
    num += w * q.row(i).mean();
    den += w;
  }
  out.report.mean = num / den;
  // Restriction to the requested ray (nearest lattice angle).
  int jr = 0;
  double best = 1e300;
  for (int j = 0; j < nt; ++j) {
    double d = std::abs(std::remainder(u.lat_theta(j) - ray_angle, 2.0 * kPi));
    if (d < best) {
      best = d;
      jr = j;
    }
  }
  out.onray_sup = q.col(jr).maxCoeff();
  return out;
}

StabilityDeficit cheng_yau_stability(const FourierHarmonic& u) {
  const auto& ball = *u.ball;
  const double R = ball.R;
  const Matrix Q = u.q_lattice();
  const int nr = static_cast<int>(u.lat_r.size());
  const int nt = static_cast<int>(u.lat_theta.size());
  const Array wr = trapezoid_weights(u.lat_r);
  double num = 0.0, den = 0.0, excl = 0.0;
  for (int i = 0; i < nr; ++i) {
    const double rh = u.lat_r(i) / R;
    const double one_m = 1.0 - rh * rh;
    const double w = wr(i) * ball.f(u.lat_r0 + i);
    for (int j = 0; j < nt; ++j) {
      const double qhat = R * R * Q(i, j);  // |grad ln u|^2 on the unit ball
      den += w;
      if (std::sqrt(qhat) <= tol::eps_log) {
        excl += w;
        continue;
      }
      const double t1 = 4.0 / (one_m * one_m) - qhat;
      const double t2 = std::log(2.0 / (one_m * std::sqrt(qhat)));
      num += w * (t1 + t2);
    }
  }
  StabilityDeficit out;
  out.excluded_fraction = excl / den;
  out.reliable = out.excluded_fraction <= 0.01;
  out.delta = (den - excl) > 0.0 ? num / (den - excl) : 0.0;
  return out;
}

VInequalityReport v_inequality_residual(const FourierHarmonic& u,
                                        double h_fd_frac) {
  const auto& ball = *u.ball;
  const double R = ball.R;
  const double h = h_fd_frac * R;
  const int nt = static_cast<int>(u.lat_theta.size());
  const double dtheta = 2.0 * kPi / nt;

  // Center rows: lattice radii a safe margin away from the apex and from the
  // outer edge of the trusted region.
  const double r_min = std::max(4.0 * h, 0.05 * R);
  std::vector<int> rows;
  for (int i = 0; i < u.lat_r.size(); ++i) {
    const double r = u.lat_r(i);
    if (r >= r_min && r + h <= u.eval_rmax) rows.push_back(i);
  }
  if (rows.size() < 8)
    throw ConfigError("v-inequality stencil has too few interior radii");
  const int nr = static_cast<int>(rows.size());
  Array radii(nr);
  for (int i = 0; i < nr; ++i) radii(i) = u.lat_r(rows[i]);

  auto v_at = [&](const Array& rr) {
    const Station st = station_at(u, rr);
    if (st.U.minCoeff() <= 0.0)
      throw SolverError("v-inequality stencil left the positivity region");
    return q_of(st);
  };

  // Clamp below eps_q so excluded points cannot leak infinities into the
  // angular stencil of admitted neighbours; excluded points are skipped in
  // every statistic below.
  const Matrix Qc = v_at(radii);
  Matrix v(nr, nt);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nt; ++j)
      v(i, j) = std::log(std::max(Qc(i, j), tol::eps_q));

  auto laplacian_residual = [&](double hr, int ltheta,
                                Matrix* residual) {
    const Matrix Qp = v_at((radii + hr).eval());
    const Matrix Qm = v_at((radii - hr).eval());
    residual->resize(nr, nt);
    const double ht = ltheta * dtheta;
    for (int i = 0; i < nr; ++i) {
      const double f = ball.profile.f(radii(i));
      const double fp = ball.profile.fp(radii(i));
      for (int j = 0; j < nt; ++j) {
        const double vp = std::log(std::max(Qp(i, j), tol::eps_q));
        const double vm = std::log(std::max(Qm(i, j), tol::eps_q));
        const double vc = v(i, j);
        const int jp = (j + ltheta) % nt;
        const int jm = (j - ltheta + nt) % nt;
        const double lap =
            (vp - 2.0 * vc + vm) / (hr * hr) +
            fp / f * (vp - vm) / (2.0 * hr) +
            (v(i, jp) - 2.0 * vc + v(i, jm)) / (f * f * ht * ht);
        (*residual)(i, j) = lap - 2.0 * Qc(i, j);
      }
    }
  };

  Matrix res_c, res_f;
  laplacian_residual(h, 2, &res_c);
  laplacian_residual(0.5 * h, 1, &res_f);

  VInequalityReport out;
  long excluded = 0;
  double diff_max = 0.0, min_f = 1e300, min_c = 1e300;
  Matrix deficit = Matrix::Zero(nr, nt);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nt; ++j) {
      if (Qc(i, j) <= tol::eps_q) {
        ++excluded;
        continue;
      }
      diff_max = std::max(diff_max, std::abs(res_c(i, j) - res_f(i, j)));
      min_c = std::min(min_c, res_c(i, j));
      min_f = std::min(min_f, res_f(i, j));
      deficit(i, j) = std::max(0.0, -res_f(i, j));
    }
  if (excluded == long(nr) * nt)
    throw SolverError("v-inequality: gradient vanishes on the whole lattice");
  out.excluded_fraction = double(excluded) / (double(nr) * nt);
  out.tol_fd = 2.0 * diff_max / 3.0 + 1e-12;
  out.min_residual = min_f;
  out.worst_violation_coarse = std::max(0.0, -min_c);
  out.worst_violation_fine = std::max(0.0, -min_f);

  out.report.id = "v-inequality";
  Eigen::Index bi = 0, bj = 0;
  out.report.sup = deficit.maxCoeff(&bi, &bj);
  out.report.sup_at = radii(bi);
  out.report.tol = out.tol_fd;
  out.report.violations = (deficit.array() > out.tol_fd).count();
  const Array wr = trapezoid_weights(radii);
  double num = 0.0, den = 0.0;
  for (int i = 0; i < nr; ++i) {
    const double w = wr(i) * ball.profile.f(radii(i));
    num += w * deficit.row(i).mean();
    den += w;
  }
  out.report.mean = num / den;
  return out;
}

}  // namespace modelball
