#include "modelball/fourier_harmonic.hpp"

#include "modelball/interpolate.hpp"
#include "modelball/ode.hpp"

#include <cstdio>
#include <sstream>

namespace modelball {

namespace {

// ODE defect of the stored (phi, phi') pair at interior nodes, with the
// second derivative reconstructed from a 5-node degree-9 Hermite fit; this
// route is independent of the integrator that produced the values.  The
// window span is held near 0.15/k so fit truncation (~(k span)^8) and nodal
// noise amplification (~eps/span^2) both stay far below the certificate, and
// the defect is scaled by the local size of the ODE terms.
double mode_defect(const ModelBall& ball, int k, const Array& phi,
                   const Array& dphi) {
  const auto& r = ball.grid.nodes;
  const int m = static_cast<int>(r.size());
  const int s_cap = (m - 2) / 4;
  const double span_target =
      std::min(0.15 / std::max(k, 1), 0.8 * (r(m - 1) - r(1)));
  double sup = 0.0;
  for (int i = 1; i < m; ++i) {
    int a = 1, s = 1;
    for (s = 1; s <= s_cap; ++s) {
      a = std::clamp(i - 2 * s, 1, m - 1 - 4 * s);
      if (r(a + 4 * s) - r(a) >= span_target) break;
    }
    s = std::min(s, s_cap);
    a = std::clamp(i - 2 * s, 1, m - 1 - 4 * s);
    const double d2 = hermite9_deriv2(r, phi, dphi, a, s, i);
    const double f = ball.f(i);
    const double t1 = ball.fp(i) / f * dphi(i);
    const double t2 = double(k) * k / (f * f) * phi(i);
    const double res = d2 + t1 - t2;
    const double scale = std::abs(d2) + std::abs(t1) + std::abs(t2) + 1.0;
    sup = std::max(sup, std::abs(res) / scale);
  }
  return sup;
}

}  // namespace

RadialMode solve_mode(const BallPtr& ball, int k, double rtol) {
  if (ball->n != 2)
    throw ConfigError("Fourier modes are defined on 2-D balls only");
  if (k < 0) throw ConfigError("mode order must be >= 0");
  const auto& r = ball->grid.nodes;
  const int m = static_cast<int>(r.size());
  RadialMode mode;
  mode.k = k;
  mode.phi = Array::Zero(m);
  mode.dphi = Array::Zero(m);
  mode.d2phi = Array::Zero(m);
  if (k == 0) {
    mode.phi = Array::Ones(m);
    return mode;
  }

  // Two-term Frobenius launch: phi = r^k (1 + c2 r^2), c2 = -k a3 / 2.
  const double c2 = -0.5 * k * ball->profile.a3();
  const double r1 = r(1);
  // State: (w, L) with w = phi'/phi and L = ln phi (relative); the Riccati
  // form never overflows even for large k.
  Eigen::Vector2d y;
  y(0) = k / r1 + 2.0 * c2 * r1 / (1.0 + c2 * r1 * r1);
  y(1) = 0.0;
  const auto& prof = ball->profile;
  auto rhs = [&](double t, const Eigen::Vector2d& s) {
    const double f = prof.f(t);
    const double w = s(0);
    Eigen::Vector2d d;
    d(0) = -w * w - prof.fp(t) / f * w + double(k) * k / (f * f);
    d(1) = w;
    return d;
  };
  Array tail = r.segment(1, m - 1);
  auto states = integrate_nodes<2>(rhs, y, tail, rtol, 1e-14);
  const double LR = states(m - 2, 1);
  for (int i = 1; i < m; ++i) {
    const double L = states(i - 1, 1) - LR;
    const double phi = std::exp(L);
    mode.phi(i) = phi;
    mode.dphi(i) = states(i - 1, 0) * phi;
  }
  mode.dphi(0) = (k == 1) ? mode.dphi(1) / (1.0 + 3.0 * c2 * r1 * r1) : 0.0;
  // Second derivative from the ODE: exact wherever (phi, dphi) are, giving
  // Hermite slope data for interpolating dphi between nodes.  Apex limit of
  // k^2 phi / f^2 - (f'/f) phi' for phi ~ c r^k is c k(k-1) r^{k-2}.
  for (int i = 1; i < m; ++i) {
    const double f = ball->f(i);
    mode.d2phi(i) =
        double(k) * k / (f * f) * mode.phi(i) - ball->fp(i) / f * mode.dphi(i);
  }
  mode.d2phi(0) = (k == 2) ? 2.0 * mode.phi(1) / (r1 * r1) : 0.0;
  for (int i = 1; i < m; ++i) {
    if (!(mode.phi(i) >= 0.0) || !(mode.dphi(i) >= -1e-12 * mode.phi(i)))
      throw SolverError("mode " + std::to_string(k) +
                        " lost positivity/monotonicity at r = " +
                        std::to_string(r(i)));
  }
  mode.residual_sup = mode_defect(*ball, k, mode.phi, mode.dphi);
  if (mode.residual_sup > tol::mode_residual) {
    char msg[96];
    std::snprintf(msg, sizeof(msg), "mode %d ODE defect %.3e exceeds 1e-8", k,
                  mode.residual_sup);
    throw SolverError(msg);
  }
  return mode;
}

BoundaryData BoundaryData::constant(double a0) {
  BoundaryData d;
  d.terms.push_back({0, a0, 0.0});
  return d;
}

BoundaryData BoundaryData::cosine(double a0, double a1, double b2) {
  BoundaryData d;
  d.terms.push_back({0, a0, 0.0});
  if (a1 != 0.0) d.terms.push_back({1, a1, 0.0});
  if (b2 != 0.0) d.terms.push_back({2, 0.0, b2});
  return d;
}

BoundaryData BoundaryData::poisson(double pole_angle) {
  BoundaryData d;
  d.analytic_poisson = true;
  d.pole_angle = pole_angle;
  return d;
}

BoundaryData BoundaryData::from_csv(const std::string& text) {
  BoundaryData d;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (lineno == 1 && line.find_first_not_of("kab,_ \t\r") == std::string::npos)
      continue;  // header row
    std::istringstream row(line);
    std::string cell;
    Term t{0, 0.0, 0.0};
    try {
      if (!std::getline(row, cell, ',')) throw std::invalid_argument("k");
      t.k = std::stoi(cell);
      if (!std::getline(row, cell, ',')) throw std::invalid_argument("a");
      t.a = std::stod(cell);
      if (!std::getline(row, cell, ',')) throw std::invalid_argument("b");
      t.b = std::stod(cell);
    } catch (const std::exception&) {
      throw ConfigError("boundary data line " + std::to_string(lineno) +
                        ": expected k,a_k,b_k");
    }
    if (t.k < 0)
      throw ConfigError("boundary data line " + std::to_string(lineno) +
                        ": k must be >= 0");
    d.terms.push_back(t);
  }
  if (d.terms.empty()) throw ConfigError("boundary data file is empty");
  return d;
}

double BoundaryData::eval(double theta, int K_max) const {
  if (analytic_poisson) {
    double v = 1.0 / (2.0 * kPi);
    for (int k = 1; k <= K_max; ++k)
      v += std::cos(k * (theta - pole_angle)) / kPi;
    return v;
  }
  double v = 0.0;
  for (const auto& t : terms) {
    if (t.k > K_max) continue;
    v += t.a * std::cos(t.k * theta) + t.b * std::sin(t.k * theta);
  }
  return v;
}

namespace {

void mode_at(const FourierHarmonic& u, int k, double r, double& phi,
             double& dphi) {
  const auto& grid = u.ball->grid.nodes;
  if (k == 0) {
    phi = 1.0;
    dphi = 0.0;
    return;
  }
  // Each quantity gets its own Hermite data: differentiating the value
  // interpolant would cost an order of accuracy on dphi.
  double drop;
  cubic_hermite(grid, u.modes[k].phi, u.modes[k].dphi, r, phi, drop);
  cubic_hermite(grid, u.modes[k].dphi, u.modes[k].d2phi, r, dphi, drop);
}

}  // namespace

double FourierHarmonic::value(double r, double theta) const {
  double v = 0.0;
  for (int k = 0; k <= K_max; ++k) {
    if (a(k) == 0.0 && b(k) == 0.0) continue;
    double phi, dphi;
    mode_at(*this, k, r, phi, dphi);
    v += phi * (a(k) * std::cos(k * theta) + b(k) * std::sin(k * theta));
  }
  return v;
}

void FourierHarmonic::gradient(double r, double theta, double& ur,
                               double& ut_over_f) const {
  ur = 0.0;
  double ut = 0.0;
  for (int k = 0; k <= K_max; ++k) {
    if (a(k) == 0.0 && b(k) == 0.0) continue;
    double phi, dphi;
    mode_at(*this, k, r, phi, dphi);
    const double c = std::cos(k * theta), s = std::sin(k * theta);
    ur += dphi * (a(k) * c + b(k) * s);
    ut += phi * k * (-a(k) * s + b(k) * c);
  }
  ut_over_f = ut / ball->profile.f(r);
}

double FourierHarmonic::log_gradient(double r, double theta) const {
  const double u = value(r, theta);
  if (!(u > tol::eps_log))
    throw SolverError("log-gradient evaluation where u <= tolerance");
  double ur, ut;
  gradient(r, theta, ur, ut);
  return std::sqrt(ur * ur + ut * ut) / u;
}

Matrix FourierHarmonic::value_lattice() const {
  const int nr = static_cast<int>(lat_r.size());
  const int nt = static_cast<int>(lat_theta.size());
  Matrix Phi(nr, K_max + 1), Ang(K_max + 1, nt);
  for (int k = 0; k <= K_max; ++k) {
    for (int i = 0; i < nr; ++i)
      Phi(i, k) = (k == 0) ? 1.0 : modes[k].phi(lat_r0 + i);
    for (int j = 0; j < nt; ++j)
      Ang(k, j) = a(k) * std::cos(k * lat_theta(j)) +
                  b(k) * std::sin(k * lat_theta(j));
  }
  return Phi * Ang;
}

Matrix FourierHarmonic::q_lattice() const {
  const int nr = static_cast<int>(lat_r.size());
  const int nt = static_cast<int>(lat_theta.size());
  Matrix Phi(nr, K_max + 1), DPhi(nr, K_max + 1);
  Matrix Ang(K_max + 1, nt), DAng(K_max + 1, nt);
  for (int k = 0; k <= K_max; ++k) {
    for (int i = 0; i < nr; ++i) {
      Phi(i, k) = (k == 0) ? 1.0 : modes[k].phi(lat_r0 + i);
      DPhi(i, k) = (k == 0) ? 0.0 : modes[k].dphi(lat_r0 + i);
    }
    for (int j = 0; j < nt; ++j) {
      const double c = std::cos(k * lat_theta(j));
      const double s = std::sin(k * lat_theta(j));
      Ang(k, j) = a(k) * c + b(k) * s;
      DAng(k, j) = k * (-a(k) * s + b(k) * c);
    }
  }
  const Matrix U = Phi * Ang;
  const Matrix Ur = DPhi * Ang;
  const Matrix Ut = Phi * DAng;
  Matrix Q(nr, nt);
  for (int i = 0; i < nr; ++i) {
    const double f = ball->f(lat_r0 + i);
    for (int j = 0; j < nt; ++j) {
      const double g2 =
          Ur(i, j) * Ur(i, j) + Ut(i, j) * Ut(i, j) / (f * f);
      Q(i, j) = g2 / (U(i, j) * U(i, j));
    }
  }
  return Q;
}

FourierHarmonic harmonic_from_boundary(const BallPtr& ball,
                                       const BoundaryData& data,
                                       const HarmonicOptions& opts) {
  if (ball->n != 2)
    throw ConfigError("harmonic_from_boundary works on 2-D balls only");
  if (opts.K_max < 0 || opts.K_max > 256)
    throw ConfigError("K_max out of range [0, 256]");

  if (!data.analytic_poisson) {
    double bmin = std::numeric_limits<double>::infinity();
    for (int j = 0; j < 4096; ++j) {
      const double theta = 2.0 * kPi * j / 4096;
      double v = 0.0;
      for (const auto& t : data.terms)
        v += t.a * std::cos(t.k * theta) + t.b * std::sin(t.k * theta);
      bmin = std::min(bmin, v);
    }
    if (!(bmin > 0.0))
      throw ConfigError("boundary data is not positive (lattice min = " +
                        std::to_string(bmin) + ")");
  }

  FourierHarmonic u;
  u.ball = ball;
  u.K_max = opts.K_max;
  u.a = Array::Zero(opts.K_max + 1);
  u.b = Array::Zero(opts.K_max + 1);
  if (data.analytic_poisson) {
    u.a(0) = 1.0 / (2.0 * kPi);
    for (int k = 1; k <= opts.K_max; ++k) {
      u.a(k) = std::cos(k * data.pole_angle) / kPi;
      u.b(k) = std::sin(k * data.pole_angle) / kPi;
    }
  } else {
    for (const auto& t : data.terms) {
      if (t.k > opts.K_max) {
        u.dropped_tail += std::abs(t.a) + std::abs(t.b);
        continue;
      }
      u.a(t.k) += t.a;
      u.b(t.k) += t.b;
    }
  }

  u.modes.resize(opts.K_max + 1);
  for (int k = 0; k <= opts.K_max; ++k) {
    if (k > 0 && u.a(k) == 0.0 && u.b(k) == 0.0) {
      u.modes[k].k = k;
      u.modes[k].phi = Array::Zero(ball->nodes());
      u.modes[k].dphi = Array::Zero(ball->nodes());
      continue;
    }
    u.modes[k] = solve_mode(ball, k, opts.rtol);
  }

  // Evaluation lattice: grid radii in (0, eval_rmax], uniform angles.
  u.eval_rmax = opts.eval_rmax_frac * ball->R;
  const auto& r = ball->grid.nodes;
  int hi = 1;
  while (hi + 1 < static_cast<int>(r.size()) &&
         r(hi + 1) <= u.eval_rmax * (1.0 + 1e-12))
    ++hi;
  u.lat_r0 = 1;
  u.lat_r = r.segment(1, hi);
  u.lat_theta = Array::LinSpaced(opts.ntheta, 0.0, 2.0 * kPi * (opts.ntheta - 1.0) / opts.ntheta);
  if (data.analytic_poisson) {
    // Geometric bound on the truncated kernel tail at the lattice cap
    // (concave profiles decay no slower than the flat powers r^k).
    const double rho = opts.eval_rmax_frac;
    u.dropped_tail =
        2.0 / kPi * std::pow(rho, opts.K_max + 1) / (1.0 - rho);
  }
  u.min_u = u.value_lattice().minCoeff();
  if (!(u.min_u > 0.0))
    throw ConfigError("harmonic extension is not positive on the lattice "
                      "(min = " +
                      std::to_string(u.min_u) + ")");
  return u;
}

double poisson_kernel_flat(double r, double theta, double y_angle) {
  if (r < 0.0 || r >= 1.0)
    throw ConfigError("poisson_kernel_flat needs 0 <= r < 1");
  const double d2 = 1.0 + r * r - 2.0 * r * std::cos(theta - y_angle);
  return (1.0 - r * r) / (2.0 * kPi * d2);
}

}  // namespace modelball
