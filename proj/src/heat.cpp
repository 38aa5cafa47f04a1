#include "modelball/heat.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "modelball/interpolate.hpp"

namespace modelball {

const char* to_string(HeatBC bc) {
  return bc == HeatBC::Dirichlet ? "dirichlet" : "truncated-neumann";
}

namespace {

// Solves a tridiagonal system in place; diag/rhs are overwritten.
void thomas_solve(Array& lower, Array& diag, Array& upper, Array& rhs) {
  const int n = static_cast<int>(diag.size());
  for (int i = 1; i < n; ++i) {
    const double m = lower(i) / diag(i - 1);
    diag(i) -= m * upper(i - 1);
    rhs(i) -= m * rhs(i - 1);
  }
  rhs(n - 1) /= diag(n - 1);
  for (int i = n - 2; i >= 0; --i)
    rhs(i) = (rhs(i) - upper(i) * rhs(i + 1)) / diag(i);
}

}  // namespace

int HeatField::row_at(double t) const {
  for (int i = 0; i < times.size(); ++i)
    if (std::abs(times(i) - t) <= 1e-12 * (std::abs(t) + 1.0)) return i;
  throw ConfigError("no heat snapshot stored at the requested time");
}

double HeatField::value(double r, double t) const {
  const int row = row_at(t);
  const auto& x = ball->grid.nodes;
  if (r < 0.0 || r > ball->R) throw ConfigError("heat sample radius outside ball");
  Array y = U.row(row).transpose();
  // Derivatives from the interior differences; symmetric at the apex.
  const int m = static_cast<int>(x.size());
  Array dy(m);
  dy(0) = 0.0;
  for (int i = 1; i + 1 < m; ++i)
    dy(i) = (y(i + 1) - y(i - 1)) / (x(i + 1) - x(i - 1));
  dy(m - 1) = (y(m - 1) - y(m - 2)) / (x(m - 1) - x(m - 2));
  double v, d;
  cubic_hermite(x, y, dy, r, v, d);
  return v;
}

double HeatField::mass_at_row(int row) const {
  return (cell_mass * U.row(row).transpose().array()).sum();
}

HeatField heat_solve_radial(BallPtr ball,
                            const std::function<double(double)>& u0,
                            double t0, double t_end, const HeatOptions& opt) {
  if (!(t_end > t0) || t0 < 0.0)
    throw ConfigError("heat solve needs 0 <= t0 < t_end");
  if (opt.steps < 8) throw ConfigError("heat solve needs at least 8 steps");
  const auto& x = ball->grid.nodes;
  const int m = static_cast<int>(x.size());
  const double dt = (t_end - t0) / opt.steps;

  // Face areas and cell masses. Cell i spans the two half-segments around
  // node i; masses use Simpson on each half so total mass matches volume.
  Array face_area(m - 1), face_h(m - 1);
  for (int i = 0; i + 1 < m; ++i) {
    const double rm = 0.5 * (x(i) + x(i + 1));
    face_area(i) = sphere_area(*ball, rm);
    face_h(i) = x(i + 1) - x(i);
  }
  Array cell_mass = Array::Zero(m);
  auto half_mass = [&](double a, double b) {
    const double mid = 0.5 * (a + b);
    return (b - a) / 6.0 *
           (sphere_area(*ball, a) + 4.0 * sphere_area(*ball, mid) +
            sphere_area(*ball, b));
  };
  for (int i = 0; i + 1 < m; ++i) {
    const double rm = 0.5 * (x(i) + x(i + 1));
    cell_mass(i) += half_mass(x(i), rm);
    cell_mass(i + 1) += half_mass(rm, x(i + 1));
  }

  // Unknowns: nodes 0..last. Dirichlet pins the outer node at zero.
  const int nu = (opt.bc == HeatBC::Dirichlet) ? m - 1 : m;
  Array Ldiag = Array::Zero(nu), Llow = Array::Zero(nu), Lup = Array::Zero(nu);
  for (int i = 0; i < nu; ++i) {
    if (i > 0) {
      const double c = face_area(i - 1) / face_h(i - 1);
      Ldiag(i) -= c;
      Llow(i) = c;
    }
    if (i + 1 < m) {
      const double c = face_area(i) / face_h(i);
      Ldiag(i) -= c;
      if (i + 1 < nu) Lup(i) = c;
    }
  }

  Array u(nu);
  for (int i = 0; i < nu; ++i) u(i) = u0(x(i));
  if (u.minCoeff() < 0.0) throw ConfigError("heat initial data must be nonnegative");

  // Snapshot bookkeeping: requested times rounded to step boundaries, plus
  // the initial row and the last three steps.
  std::set<int> keep;
  keep.insert(0);
  for (double t : opt.snapshot_times) {
    if (t < t0 - 1e-12 || t > t_end + 1e-12)
      throw ConfigError("heat snapshot time outside [t0, t_end]");
    int k = static_cast<int>(std::llround((t - t0) / dt));
    keep.insert(std::clamp(k, 0, opt.steps));
  }
  for (int k = std::max(0, opt.steps - 2); k <= opt.steps; ++k) keep.insert(k);

  HeatField out;
  out.ball = ball;
  out.bc = opt.bc;
  out.t0 = t0;
  out.t_end = t_end;
  out.dt = dt;
  out.steps = opt.steps;
  out.cell_mass = cell_mass;
  out.times.resize(static_cast<int>(keep.size()));
  out.U.setZero(static_cast<int>(keep.size()), m);
  int next_row = 0;
  auto maybe_keep = [&](int k, const Array& v) {
    if (!keep.count(k)) return;
    out.times(next_row) = t0 + k * dt;
    for (int i = 0; i < nu; ++i) out.U(next_row, i) = v(i);
    ++next_row;
  };
  maybe_keep(0, u);
  out.min_value = u.minCoeff();

  const Array mass_full = cell_mass.head(nu);
  double mass_prev = (mass_full * u).sum();
  const double mass_scale = std::max(mass_prev, 1e-300);

  auto advance = [&](const Array& uin, double theta) {
    Array diag(nu), low(nu), up(nu), rhs(nu);
    for (int i = 0; i < nu; ++i) {
      diag(i) = cell_mass(i) - theta * dt * Ldiag(i);
      low(i) = -theta * dt * Llow(i);
      up(i) = -theta * dt * Lup(i);
      double Lu = Ldiag(i) * uin(i);
      if (i > 0) Lu += Llow(i) * uin(i - 1);
      if (i + 1 < nu) Lu += Lup(i) * uin(i + 1);
      rhs(i) = cell_mass(i) * uin(i) + (1.0 - theta) * dt * Lu;
    }
    thomas_solve(low, diag, up, rhs);
    return Array(rhs);
  };

  for (int k = 1; k <= opt.steps; ++k) {
    Array unew = advance(u, 0.5);
    if (unew.minCoeff() < 0.0) {
      unew = advance(u, 1.0);
      ++out.be_fallbacks;
    }
    u = unew;
    out.min_value = std::min(out.min_value, u.minCoeff());
    const double mass = (mass_full * u).sum();
    if (opt.bc == HeatBC::Dirichlet)
      out.mass_drift = std::max(out.mass_drift, (mass - mass_prev) / mass_scale);
    else
      out.mass_drift =
          std::max(out.mass_drift, std::abs(mass - mass_prev) / mass_scale);
    mass_prev = mass;
    maybe_keep(k, u);
  }
  if (out.min_value < 0.0)
    throw SolverError("heat solve lost positivity despite backward-Euler fallback");
  return out;
}

double euclidean_heat_kernel(int n, double d, double t) {
  if (t <= 0.0) throw ConfigError("heat kernel needs t > 0");
  return std::pow(4.0 * kPi * t, -0.5 * n) * std::exp(-d * d / (4.0 * t));
}

}  // namespace modelball
