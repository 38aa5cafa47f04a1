#include "modelball/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "modelball/cheng_yau.hpp"
#include "modelball/deficits.hpp"
#include "modelball/fourier_harmonic.hpp"
#include "modelball/green.hpp"
#include "modelball/heat.hpp"
#include "modelball/li_yau.hpp"
#include "modelball/model_ball.hpp"
#include "modelball/warping_profile.hpp"

namespace modelball {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& value) {
  try {
    size_t used = 0;
    const double x = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': bad numeric value '" + value +
                      "'");
  }
}

long to_long(const std::string& key, const std::string& value) {
  const double x = to_double(key, value);
  if (x != std::floor(x))
    throw ConfigError("config key '" + key + "': expected an integer");
  return static_cast<long>(x);
}

// Applies one assignment; returns false when the key is unknown.
bool set_key(SuiteConfig& c, const std::string& key, const std::string& value) {
  if (key == "suite") c.suite = value;
  else if (key == "profile") c.profile = value;
  else if (key == "kappa") c.kappa = to_double(key, value);
  else if (key == "alpha") c.alpha = to_double(key, value);
  else if (key == "cone_scale") c.cone_scale = to_double(key, value);
  else if (key == "profile_file") c.profile_file = value;
  else if (key == "n") c.n = static_cast<int>(to_long(key, value));
  else if (key == "R") c.R = to_double(key, value);
  else if (key == "segments") c.segments = static_cast<int>(to_long(key, value));
  else if (key == "spacing") c.spacing = value;
  else if (key == "K_max") c.K_max = static_cast<int>(to_long(key, value));
  else if (key == "ntheta") c.ntheta = static_cast<int>(to_long(key, value));
  else if (key == "eval_rmax_frac") c.eval_rmax_frac = to_double(key, value);
  else if (key == "boundary") c.boundary = value;
  else if (key == "pole_angle") c.pole_angle = to_double(key, value);
  else if (key == "a0") c.a0 = to_double(key, value);
  else if (key == "a1") c.a1 = to_double(key, value);
  else if (key == "b2") c.b2 = to_double(key, value);
  else if (key == "boundary_file") c.boundary_file = value;
  else if (key == "h_fd_frac") c.h_fd_frac = to_double(key, value);
  else if (key == "steps") c.steps = static_cast<int>(to_long(key, value));
  else if (key == "t0") c.t0 = to_double(key, value);
  else if (key == "t_end") c.t_end = to_double(key, value);
  else if (key == "bc") c.bc = value;
  else if (key == "u0") c.u0 = value;
  else if (key == "t1_frac") c.t1_frac = to_double(key, value);
  else if (key == "t2_frac") c.t2_frac = to_double(key, value);
  else if (key == "x1_frac") c.x1_frac = to_double(key, value);
  else if (key == "x2_frac") c.x2_frac = to_double(key, value);
  else if (key == "green_r") c.green_r = to_double(key, value);
  else if (key == "seed")
    c.seed = static_cast<unsigned long long>(to_long(key, value));
  else return false;
  return true;
}

void expect_one_of(const std::string& key, const std::string& value,
                   std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (value == a) return;
  std::string msg = "config key '" + key + "': '" + value + "' not in {";
  bool first = true;
  for (const char* a : allowed) {
    if (!first) msg += ", ";
    msg += a;
    first = false;
  }
  throw ConfigError(msg + "}");
}

void validate(const SuiteConfig& c) {
  const auto names = suite_names();
  if (std::find(names.begin(), names.end(), c.suite) == names.end())
    throw ConfigError("unknown suite '" + c.suite + "'");
  expect_one_of("profile", c.profile,
                {"euclidean", "sphere", "smoothed-cone", "custom"});
  expect_one_of("spacing", c.spacing, {"uniform", "end-refined"});
  expect_one_of("boundary", c.boundary,
                {"poisson", "constant", "cosine", "file"});
  expect_one_of("bc", c.bc, {"dirichlet", "truncated-neumann"});
  expect_one_of("u0", c.u0, {"kernel", "bump"});
  if (c.n < 2 || c.n > 16) throw ConfigError("config key 'n': need 2 <= n <= 16");
  if (!(c.R > 0.0)) throw ConfigError("config key 'R': need R > 0");
  if (c.segments < 16 || c.segments > 1 << 16)
    throw ConfigError("config key 'segments': out of range [16, 65536]");
  if (c.K_max < 0 || c.K_max > 256)
    throw ConfigError("config key 'K_max': out of range [0, 256]");
  if (c.ntheta < 64 || c.ntheta > 8192)
    throw ConfigError("config key 'ntheta': out of range [64, 8192]");
  if (!(c.eval_rmax_frac > 0.0 && c.eval_rmax_frac <= 0.95))
    throw ConfigError("config key 'eval_rmax_frac': need (0, 0.95]");
  if (!(c.h_fd_frac > 0.0 && c.h_fd_frac <= 0.05))
    throw ConfigError("config key 'h_fd_frac': need (0, 0.05]");
  if (c.steps < 8 || c.steps > 1 << 20)
    throw ConfigError("config key 'steps': out of range [8, 1048576]");
  if (!(c.kappa > 0.0)) throw ConfigError("config key 'kappa': need > 0");
  if (!(c.alpha > 0.0 && c.alpha <= 1.0))
    throw ConfigError("config key 'alpha': need (0, 1]");
  if (!(c.cone_scale > 0.0))
    throw ConfigError("config key 'cone_scale': need > 0");
}

struct Rng {
  std::mt19937_64 g;
  explicit Rng(unsigned long long seed) : g(seed) {}
  double uniform(double a, double b) {
    return a + (b - a) * ((g() >> 11) * 0x1.0p-53);
  }
  int pick(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(g() % static_cast<unsigned long long>(hi - lo + 1));
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open file '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// CSV of r,f[,fpp] rows for sampled profiles; '#' comments and one optional
// header row allowed.
ProfileSpec samples_from_csv(const std::string& text) {
  ProfileSpec spec;
  spec.kind = ProfileKind::Custom;
  std::vector<double> r, f, fpp;
  bool have_fpp = true;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::istringstream row(t);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(row, cell, ',')) cells.push_back(trim(cell));
    if (cells.size() < 2)
      throw ConfigError("profile csv line " + std::to_string(lineno) +
                        ": expected r,f[,fpp]");
    try {
      const double rv = std::stod(cells[0]);
      const double fv = std::stod(cells[1]);
      r.push_back(rv);
      f.push_back(fv);
      if (cells.size() >= 3) fpp.push_back(std::stod(cells[2]));
      else have_fpp = false;
    } catch (const std::exception&) {
      if (r.empty() && lineno <= 2) continue;  // header row
      throw ConfigError("profile csv line " + std::to_string(lineno) +
                        ": bad number");
    }
  }
  if (have_fpp && fpp.size() != r.size())
    throw ConfigError("profile csv: incomplete curvature column");
  spec.sample_r = Eigen::Map<const Array>(r.data(), r.size());
  spec.sample_f = Eigen::Map<const Array>(f.data(), f.size());
  if (have_fpp && !fpp.empty())
    spec.sample_fpp = Eigen::Map<const Array>(fpp.data(), fpp.size());
  return spec;
}

BallPtr build_ball(const SuiteConfig& c) {
  ProfileSpec spec;
  if (c.profile == "euclidean") {
    spec.kind = ProfileKind::Euclidean;
  } else if (c.profile == "sphere") {
    spec.kind = ProfileKind::Sphere;
    spec.kappa = c.kappa;
  } else if (c.profile == "smoothed-cone") {
    spec.kind = ProfileKind::SmoothedCone;
    spec.alpha = c.alpha;
    spec.cone_scale = c.cone_scale;
  } else {
    if (c.profile_file.empty())
      throw ConfigError("custom profile needs profile_file=PATH");
    spec = samples_from_csv(read_file(c.profile_file));
  }
  const WarpingProfile profile = make_profile(spec);
  const Spacing sp =
      c.spacing == "uniform" ? Spacing::Uniform : Spacing::EndRefined;
  return make_ball(profile, c.n, c.R, c.segments, sp);
}

BoundaryData build_boundary(const SuiteConfig& c) {
  if (c.boundary == "poisson") return BoundaryData::poisson(c.pole_angle);
  if (c.boundary == "constant") return BoundaryData::constant(c.a0);
  if (c.boundary == "cosine") return BoundaryData::cosine(c.a0, c.a1, c.b2);
  if (c.boundary_file.empty())
    throw ConfigError("boundary=file needs boundary_file=PATH");
  return BoundaryData::from_csv(read_file(c.boundary_file));
}

std::string csv_table(const std::string& header,
                      const std::vector<const Array*>& cols) {
  std::string out = header + "\n";
  const int rows = static_cast<int>(cols.front()->size());
  for (int i = 0; i < rows; ++i) {
    for (size_t c = 0; c < cols.size(); ++c) {
      if (c) out += ",";
      out += fmt12(round12((*cols[c])(i)));
    }
    out += "\n";
  }
  return out;
}

double weighted_mean(const ModelBall& ball, const Array& r, const Array& v) {
  double num = 0.0, den = 0.0;
  for (int i = 0; i + 1 < r.size(); ++i) {
    const double h = r(i + 1) - r(i);
    const double w0 = 0.5 * h * sphere_area(ball, r(i));
    const double w1 = 0.5 * h * sphere_area(ball, r(i + 1));
    num += w0 * v(i) + w1 * v(i + 1);
    den += w0 + w1;
  }
  return num / den;
}

void run_cheng_yau(const SuiteConfig& c, SuiteRun& out) {
  RunRecord& rec = out.record;
  rec.theorem = "Cheng-Yau sharp gradient estimate";
  if (c.n != 2)
    throw ConfigError("suite cheng-yau needs n=2 (Fourier mode solver)");
  const BallPtr ball = build_ball(c);
  rec.check("polar-distortion", true, polar_distortion(*ball), 0.0,
            "sup |f(r)/r - 1|");
  HarmonicOptions opts;
  opts.K_max = c.K_max;
  opts.ntheta = c.ntheta;
  opts.eval_rmax_frac = c.eval_rmax_frac;
  const FourierHarmonic u = harmonic_from_boundary(ball, build_boundary(c), opts);

  rec.check("positivity-certificate", u.min_u > 0.0, u.min_u, 0.0,
            "min of u over the evaluation lattice");
  double resid = 0.0;
  for (const auto& m : u.modes) resid = std::max(resid, m.residual_sup);
  rec.check("mode-residual", resid <= tol::mode_residual, resid,
            tol::mode_residual, "worst ODE defect over radial modes");
  rec.check("truncation-tail", true, u.dropped_tail, 0.0,
            "mode mass beyond K_max at the lattice cap");

  const double tol_q = 1e-6;
  const ChengYauReport cy = cheng_yau_deficit(u, tol_q, c.pole_angle);
  rec.check("quotient-bound", cy.report.sup <= 1.0 + tol_q, cy.report.sup,
            1.0 + tol_q, "sup of (1-(r/R)^2) R |grad ln u| / 2");
  const bool flat = c.profile == "euclidean";
  if (flat && c.boundary == "poisson") {
    rec.check("flat-sharpness", std::abs(cy.report.sup - 1.0) <= tol_q,
              cy.report.sup, 1.0, "Poisson kernel attains the bound");
    rec.check("onray-attains-sup",
              std::abs(cy.onray_sup - cy.report.sup) <= 2e-7, cy.onray_sup,
              cy.report.sup,
              "pole ray sup equals global sup within the truncation tail");
  } else if (!flat) {
    rec.check("strictly-subunit", cy.report.sup < 1.0, cy.report.sup, 1.0,
              "curved balls stay strictly below the sharp constant");
  }

  const StabilityDeficit st = cheng_yau_stability(u);
  rec.check("stability-delta", st.delta >= -1e-5, st.delta, -1e-5,
            "volume-averaged stability deficit");
  rec.check("stability-reliable", st.reliable, st.excluded_fraction, 0.01,
            "measure fraction excluded by the log guard");

  const VInequalityReport vi = v_inequality_residual(u, c.h_fd_frac);
  rec.check("v-inequality", vi.min_residual >= -vi.tol_fd, vi.min_residual,
            -vi.tol_fd,
            "worst violation coarse=" + fmt12(round12(vi.worst_violation_coarse)) +
                ";fine=" + fmt12(round12(vi.worst_violation_fine)));

  rec.reports.push_back(cy.report);
  rec.reports.push_back(vi.report);

  // Radial profile of the quotient along the pole ray and its angular max.
  const Matrix Q = u.q_lattice();
  const int nr = static_cast<int>(u.lat_r.size());
  Array q_ray(nr), q_max(nr);
  int jr = 0;
  double best = 1e300;
  for (int j = 0; j < u.lat_theta.size(); ++j) {
    const double d =
        std::abs(std::remainder(u.lat_theta(j) - c.pole_angle, 2.0 * kPi));
    if (d < best) {
      best = d;
      jr = j;
    }
  }
  for (int i = 0; i < nr; ++i) {
    const double rh = u.lat_r(i) / ball->R;
    const double factor = (1.0 - rh * rh) * ball->R * 0.5;
    q_ray(i) = factor * std::sqrt(Q(i, jr));
    q_max(i) = factor * std::sqrt(Q.row(i).maxCoeff());
  }
  out.artifacts.push_back(
      {"quotient-profile.csv",
       csv_table("r,q_onray,q_maxtheta", {&u.lat_r, &q_ray, &q_max})});
}

void run_comparison_deficits(const SuiteConfig& c, SuiteRun& out) {
  RunRecord& rec = out.record;
  rec.theorem = "Laplacian and Hessian comparison deficits";
  const BallPtr ball = build_ball(c);
  rec.check("polar-distortion", true, polar_distortion(*ball), 0.0,
            "sup |f(r)/r - 1|");

  const DeficitReport lr = laplacian_r_deficit(*ball);
  const DeficitReport l2 = laplacian_r2_deficit(*ball);
  const DeficitReport hs = hessian_r2_deficit(*ball);
  const DeficitReport cv = curvature_report(*ball);
  const DeficitReport pd = polar_distortion_report(*ball);

  rec.check("gap-nonnegative", lr.violations == 0,
            static_cast<double>(lr.violations), 0.0,
            "grid points with 1 - r f'/f < -tol");
  rec.check("ricci-admissible", cv.sup <= tol::curvature, cv.sup,
            tol::curvature, "negative part of the Ricci lower bound");
  if (hs.sup > 0.0) {
    const double root = std::sqrt(c.n - 1.0);
    const double ratio = l2.sup / hs.sup;
    rec.check("ratio-consistency", std::abs(ratio - root) <= 1e-12 * root,
              ratio, root, "Laplacian vs Hessian deficit ratio sqrt(n-1)");
  } else {
    rec.check("ratio-consistency", true, 0.0, 0.0,
              "deficits vanish identically (flat profile)");
  }
  if (c.profile == "euclidean")
    rec.check("flat-identically-zero",
              std::max({lr.sup, l2.sup, hs.sup}) <= 1e-12,
              std::max({lr.sup, l2.sup, hs.sup}), 1e-12,
              "all comparison deficits vanish on the flat ball");
  rec.check("laplacian-r-sup", true, lr.sup, 0.0,
            "sup of (n-1)(1/r - f'/f)");

  rec.reports = {lr, l2, hs, cv, pd};

  const auto& r = ball->grid.nodes;
  const Array gap = comparison_gap(*ball);
  const int m = static_cast<int>(r.size());
  Array dr(m), dr2(m), hess(m);
  for (int i = 0; i < m; ++i) {
    dr(i) = i == 0 ? 0.0 : (c.n - 1.0) * gap(i) / r(i);
    dr2(i) = 2.0 * (c.n - 1.0) * std::abs(gap(i));
    hess(i) = 2.0 * std::sqrt(c.n - 1.0) * std::abs(gap(i));
  }
  out.artifacts.push_back(
      {"deficits.csv", csv_table("r,gap,laplacian_r,laplacian_r2,hessian_r2",
                                 {&r, &gap, &dr, &dr2, &hess})});
}

void run_green(const SuiteConfig& c, SuiteRun& out) {
  RunRecord& rec = out.record;
  rec.theorem = "Green function comparison and flux identity";
  const BallPtr ball = build_ball(c);
  rec.check("polar-distortion", true, polar_distortion(*ball), 0.0,
            "sup |f(r)/r - 1|");
  const RadialGreen green = radial_green(ball);
  rec.check("quadrature-converged", green.quad_error <= 1e-8,
            green.quad_error, 1e-8, "accumulated panel quadrature error");

  double flux_dev = 0.0;
  for (int k = 1; k <= 9; ++k) {
    const double r = 0.1 * k * ball->R;
    flux_dev = std::max(
        flux_dev, std::abs(sphere_area(*ball, r) * std::abs(green.deriv(r)) - 1.0));
  }
  rec.check("flux-identity", flux_dev <= 1e-12, flux_dev, 1e-12,
            "A(r) |G'(r)| = 1 at nine probe radii");

  const double R = ball->R;
  auto psi1 = [R](double r) { return std::cos(0.5 * kPi * r / R); };
  auto psi1p = [R](double r) { return -0.5 * kPi / R * std::sin(0.5 * kPi * r / R); };
  auto psi1pp = [R](double r) {
    return -0.25 * kPi * kPi / (R * R) * std::cos(0.5 * kPi * r / R);
  };
  auto psi2 = [R](double r) { return 1.0 - (r / R) * (r / R); };
  auto psi2p = [R](double r) { return -2.0 * r / (R * R); };
  auto psi2pp = [R](double) { return -2.0 / (R * R); };
  auto psi3 = [R, psi2](double r) { return psi2(r) * psi2(r); };
  auto psi3p = [R, psi2, psi2p](double r) { return 2.0 * psi2(r) * psi2p(r); };
  auto psi3pp = [R, psi2, psi2p, psi2pp](double r) {
    return 2.0 * (psi2p(r) * psi2p(r) + psi2(r) * psi2pp(r));
  };
  const double d1 = green_delta_selftest(green, psi1, psi1p, psi1pp);
  const double d2 = green_delta_selftest(green, psi2, psi2p, psi2pp);
  const double d3 = green_delta_selftest(green, psi3, psi3p, psi3pp);
  const double dmax = std::max({d1, d2, d3});
  rec.check("delta-selftest", dmax <= 1e-6, dmax, 1e-6,
            "worst |int G lap(psi) dV + psi(0)| over three test functions");

  const bool unit = std::abs(ball->R - 1.0) <= 1e-12;
  if (c.profile == "euclidean" && unit) {
    double dev = 0.0;
    const auto& r = ball->grid.nodes;
    for (int i = 1; i < r.size(); ++i) {
      if (r(i) < 0.05) continue;
      dev = std::max(dev, std::abs(green.value(r(i)) - euclidean_green(c.n, r(i))));
    }
    rec.check("matches-euclidean", dev <= 1e-10, dev, 1e-10,
              "sup |G - G_flat| over grid nodes r >= 0.05");
  }
  if (unit) {
    const GreenComparison cmp = green_comparison(green);
    rec.check("deficit-nonnegative", cmp.report.violations == 0,
              cmp.min_deficit, 0.0, "G - G_flat >= 0 on interior nodes");
    const double probe = green.value(c.green_r) - euclidean_green(c.n, c.green_r);
    const bool expect_gap = c.profile != "euclidean";
    rec.check("deficit-at-probe", expect_gap ? probe > 0.0 : probe <= 1e-10,
              probe, 0.0, "G - G_flat at r = " + fmt12(round12(c.green_r)));
    rec.reports.push_back(cmp.report);
    Array deficit = cmp.G - cmp.G_flat;
    out.artifacts.push_back(
        {"green-profile.csv",
         csv_table("r,G,G_flat,deficit", {&cmp.r, &cmp.G, &cmp.G_flat, &deficit})});
  }
}

void run_b_function(const SuiteConfig& c, SuiteRun& out) {
  RunRecord& rec = out.record;
  rec.theorem = "Boundary gradient rigidity of the b-function";
  if (c.n < 3) throw ConfigError("suite b-function needs n >= 3");
  if (std::abs(c.R - 1.0) > 1e-12)
    throw ConfigError("suite b-function is normalized to R = 1");
  const BallPtr ball = build_ball(c);
  rec.check("polar-distortion", true, polar_distortion(*ball), 0.0,
            "sup |f(r)/r - 1|");
  const RadialGreen green = radial_green(ball);
  const BGradientReport b = b_boundary_gradient(green);
  rec.check("sup-grad", true, b.sup_grad, 0.0, "f(R)^(1-n)");
  rec.check("bound-identity", std::abs(b.sup_grad - b.bound) <= 1e-12 * b.bound,
            b.sup_grad, b.bound, "sup |grad b| equals n omega_n / A(R)");
  rec.check("flat-lower-bound", b.sup_grad >= 1.0 - 1e-12, b.sup_grad, 1.0,
            "concave profiles cannot beat the flat value");
  if (c.profile == "euclidean")
    rec.check("rigidity-attained",
              b.rigidity_flat && std::abs(b.sup_grad - 1.0) <= 1e-12,
              b.sup_grad, 1.0, "flat ball attains equality");
  else
    rec.check("strict-excess", b.sup_grad > 1.0 + 1e-9, b.sup_grad, 1.0,
              "curved balls exceed the flat boundary gradient");
}

std::function<double(double)> initial_datum(const SuiteConfig& c) {
  if (c.u0 == "kernel") {
    const int n = c.n;
    const double t0 = c.t0;
    if (!(t0 > 0.0)) throw ConfigError("u0=kernel needs t0 > 0");
    return [n, t0](double r) { return euclidean_heat_kernel(n, r, t0); };
  }
  const double R = c.R;
  return [R](double r) {
    const double s = 1.0 - (r / R) * (r / R);
    return s * s;
  };
}

HeatBC parse_bc(const SuiteConfig& c) {
  return c.bc == "dirichlet" ? HeatBC::Dirichlet : HeatBC::TruncatedNeumann;
}

void run_li_yau(const SuiteConfig& c, SuiteRun& out) {
  RunRecord& rec = out.record;
  rec.theorem = "Li-Yau parabolic gradient estimate";
  const BallPtr coarse = build_ball(c);
  rec.check("polar-distortion", true, polar_distortion(*coarse), 0.0,
            "sup |f(r)/r - 1|");
  SuiteConfig cf = c;
  cf.segments = 2 * c.segments;
  cf.steps = 2 * c.steps;
  const BallPtr fine = build_ball(cf);

  Rng rng(c.seed);
  double kq = 0.0;
  for (int s = 0; s < 100; ++s) {
    const double r = rng.uniform(0.0, 3.0);
    const double t = rng.uniform(0.1, 2.0);
    kq = std::max(kq, std::abs(li_yau_kernel_quantity(c.n, r, t)));
  }
  rec.check("kernel-identity", kq <= 1e-12, kq, 1e-12,
            "analytic Li-Yau quantity of the flat kernel; 100 seeded samples");

  HeatOptions hc;
  hc.steps = c.steps;
  hc.bc = parse_bc(c);
  HeatOptions hf = hc;
  hf.steps = cf.steps;
  const auto u0 = initial_datum(c);
  const HeatField field_c = heat_solve_radial(coarse, u0, c.t0, c.t_end, hc);
  const HeatField field_f = heat_solve_radial(fine, u0, c.t0, c.t_end, hf);

  // The estimate assumes a complete model.  An absorbing Dirichlet wall
  // genuinely breaks it near the boundary, so on such balls the theorem
  // checks are recorded but not asserted.
  const bool dirichlet = hc.bc == HeatBC::Dirichlet;
  if (dirichlet)
    rec.caveats.push_back(
        "dirichlet ball: estimate hypotheses unmet (complete model); "
        "theorem checks are advisory");
  auto theorem_check = [&](const std::string& id, bool pass, double value,
                           double threshold,
                           const std::string& note) -> CheckOutcome& {
    if (dirichlet) return rec.advisory(id, pass, value, threshold, note);
    return rec.check(id, pass, value, threshold, note);
  };

  rec.check("positivity", field_f.min_value >= 0.0, field_f.min_value, 0.0,
            "backward-Euler fallbacks taken: " +
                std::to_string(field_f.be_fallbacks));
  rec.check("mass-monotone", field_f.mass_drift <= 1e-10, field_f.mass_drift,
            1e-10, "worst per-step relative mass increase");

  const LiYauField ly_c = li_yau_quantity(field_c, field_c.t_end - field_c.dt);
  const LiYauField ly_f = li_yau_quantity(field_f, field_f.t_end - field_f.dt);
  const double viol_c = std::max(0.0, -ly_c.min_time);
  const double viol_f = std::max(0.0, -ly_f.min_time);
  const double tol_pde = 2.0 * std::abs(ly_f.min_time - ly_c.min_time) + 1e-9;

  theorem_check("field-min", ly_f.min_time >= -tol_pde, ly_f.min_time,
                -tol_pde, "min of (ln u)_t - |grad ln u|^2 + n/(2t)");
  theorem_check("refinement", viol_f <= std::max(viol_c / 2.5, 1e-9), viol_f,
                std::max(viol_c / 2.5, 1e-9),
                "worst violation under joint grid/step refinement; coarse=" +
                    fmt12(round12(viol_c)));
  rec.check("route-consistency", ly_f.route_gap <= 1e-3, ly_f.route_gap, 1e-3,
            "sup gap between the time and space routes");
  if (c.profile != "euclidean") {
    const Array gq = ly_f.g_q();
    double gmax = -1e300;
    for (int i = 0; i < ly_f.r.size(); ++i)
      if (ly_f.r(i) >= 0.25 * fine->R && ly_f.r(i) <= 0.75 * fine->R)
        gmax = std::max(gmax, gq(i));
    theorem_check("g-q-strictly-negative", gmax < 0.0, gmax, 0.0,
                  "interior max of t lap(-ln u) - n/2 on curved balls");
  }

  DeficitReport lyrep;
  lyrep.id = "li-yau-deficit";
  lyrep.tol = tol_pde;
  Array deficit = (-ly_f.q_time).max(0.0);
  Eigen::Index at = 0;
  lyrep.sup = deficit.maxCoeff(&at);
  lyrep.sup_at = ly_f.r(at);
  lyrep.mean = weighted_mean(*fine, ly_f.r, deficit);
  lyrep.violations = (deficit > tol_pde).count();
  rec.reports.push_back(lyrep);

  out.artifacts.push_back(
      {"liyau-profile.csv",
       csv_table("r,q_time,q_space", {&ly_f.r, &ly_f.q_time, &ly_f.q_space})});
}

void run_harnack(const SuiteConfig& c, SuiteRun& out) {
  RunRecord& rec = out.record;
  rec.theorem = "Parabolic Harnack inequality";
  const BallPtr ball = build_ball(c);
  rec.check("polar-distortion", true, polar_distortion(*ball), 0.0,
            "sup |f(r)/r - 1|");

  Rng rng(c.seed);
  double keq = 0.0;
  for (int s = 0; s < 20; ++s) {
    const double t1 = rng.uniform(0.05, 0.5);
    const double t2 = t1 + rng.uniform(0.05, 1.0);
    const double x2 = rng.uniform(0.0, 2.0 * std::sqrt(t2));
    const double x1 = t1 / t2 * x2;
    keq = std::max(keq,
                   std::abs(harnack_ratio_kernel(c.n, x1, t1, x2, t2) - 1.0));
  }
  rec.check("kernel-equality", keq <= 1e-10, keq, 1e-10,
            "equality configurations of the flat kernel; 20 seeded samples");

  HeatOptions opt;
  opt.steps = c.steps;
  opt.bc = parse_bc(c);
  const double dt = (c.t_end - c.t0) / c.steps;
  std::vector<int> ks;
  for (int j = 1; j <= 8; ++j) ks.push_back(j * c.steps / 8);
  for (int k : ks) opt.snapshot_times.push_back(c.t0 + k * dt);
  const HeatField field =
      heat_solve_radial(ball, initial_datum(c), c.t0, c.t_end, opt);

  // The corollary assumes a complete model; on absorbing Dirichlet balls the
  // ratio checks are recorded but not asserted.
  const bool dirichlet = opt.bc == HeatBC::Dirichlet;
  if (dirichlet)
    rec.caveats.push_back(
        "dirichlet ball: corollary hypotheses unmet (complete model); "
        "ratio checks are advisory");
  auto theorem_check = [&](const std::string& id, bool pass, double value,
                           double threshold,
                           const std::string& note) -> CheckOutcome& {
    if (dirichlet) return rec.advisory(id, pass, value, threshold, note);
    return rec.check(id, pass, value, threshold, note);
  };

  double rmin = 1e300;
  for (int s = 0; s < 50; ++s) {
    const int j1 = rng.pick(0, 5);
    const int j2 = rng.pick(j1 + 1, 7);
    const double t1 = c.t0 + ks[j1] * dt;
    const double t2 = c.t0 + ks[j2] * dt;
    const double r1 = rng.uniform(0.0, 0.25 * ball->R);
    const double dr = rng.uniform(0.0, std::sqrt(t2 - t1));
    const double r2 = std::min(r1 + dr, 0.9 * ball->R);
    rmin = std::min(rmin, harnack_ratio(field, r1, t1, r2, t2));
  }
  const double tol_h = 1e-5;
  theorem_check("field-bound", rmin >= 1.0 - tol_h, rmin, 1.0 - tol_h,
                "min Harnack ratio over 50 seeded space-time pairs");

  const double t1 = c.t0 + ks[2] * dt;
  const double t2 = c.t0 + ks[7] * dt;
  const double r2 = c.x2_frac * ball->R;
  const double r1 = t1 / t2 * r2;
  const double eq = harnack_ratio(field, r1, t1, r2, t2);
  theorem_check("field-equality", std::abs(eq - 1.0) <= 1e-3, eq, 1.0,
                "kernel equality configuration reproduced by the solver");
}

double fetch_metric(const RunRecord& rec, const std::string& id) {
  for (const auto& c : rec.outcomes)
    if (c.id == id) return c.value;
  throw SolverError("sweep metric '" + id + "' missing from run record");
}

std::string metric_for(const std::string& suite) {
  if (suite == "cheng-yau") return "stability-delta";
  if (suite == "comparison-deficits") return "laplacian-r-sup";
  if (suite == "green") return "deficit-at-probe";
  if (suite == "b-function") return "sup-grad";
  throw ConfigError("sweep is not supported for suite '" + suite + "'");
}

}  // namespace

std::string SuiteConfig::hash() const { return fnv1a_hex(canonical); }

SuiteConfig parse_config(const std::string& text) {
  SuiteConfig c;
  std::map<std::string, std::string> entries;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key=value");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": empty key or value");
    if (!set_key(c, key, value))
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": unknown key '" + key + "'");
    entries[key] = value;
  }
  std::string canon;
  for (const auto& [k, v] : entries) canon += k + "=" + v + "\n";
  c.canonical = canon;
  validate(c);
  return c;
}

SuiteConfig load_config(const std::string& path) {
  return parse_config(read_file(path));
}

void apply_override(SuiteConfig& config, const std::string& key, double value) {
  std::map<std::string, std::string> entries;
  std::istringstream in(config.canonical);
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    if (eq != std::string::npos)
      entries[line.substr(0, eq)] = line.substr(eq + 1);
  }
  entries[key] = fmt12(value);
  std::string text;
  for (const auto& [k, v] : entries) text += k + "=" + v + "\n";
  config = parse_config(text);
}

std::vector<std::string> suite_names() {
  return {"cheng-yau", "li-yau",     "harnack",
          "green",     "b-function", "comparison-deficits"};
}

SuiteRun run_suite(const SuiteConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  SuiteRun out;
  out.record.suite = config.suite;
  out.record.config_hash = config.hash();
  if (config.suite == "cheng-yau") run_cheng_yau(config, out);
  else if (config.suite == "comparison-deficits") run_comparison_deficits(config, out);
  else if (config.suite == "green") run_green(config, out);
  else if (config.suite == "b-function") run_b_function(config, out);
  else if (config.suite == "li-yau") run_li_yau(config, out);
  else if (config.suite == "harnack") run_harnack(config, out);
  else throw ConfigError("unknown suite '" + config.suite + "'");
  for (const auto& a : out.artifacts) out.record.artifacts.push_back(a.name);
  out.record.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                start)
          .count();
  return out;
}

SweepResult sweep_family(const SuiteConfig& base, const std::string& param,
                         const std::vector<double>& values) {
  if (values.size() < 2) throw ConfigError("sweep needs at least two values");
  SweepResult sw;
  sw.param = param;
  sw.metric_id = metric_for(base.suite);
  for (double v : values) {
    SuiteConfig c = base;
    apply_override(c, param, v);
    SuiteRun run = run_suite(c);
    sw.values.push_back(v);
    sw.metric.push_back(round12(fetch_metric(run.record, sw.metric_id)));
    sw.distortion.push_back(
        round12(fetch_metric(run.record, "polar-distortion")));
    sw.records.push_back(std::move(run.record));
  }
  sw.monotone_increasing = true;
  for (size_t i = 0; i + 1 < sw.metric.size(); ++i)
    if (!(sw.metric[i + 1] > sw.metric[i])) sw.monotone_increasing = false;
  // Least-squares slope in log-log coordinates, when defined.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int np = 0;
  for (size_t i = 0; i < sw.values.size(); ++i) {
    if (!(sw.values[i] > 0.0) || !(sw.metric[i] > 0.0)) continue;
    const double x = std::log(sw.values[i]);
    const double y = std::log(sw.metric[i]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++np;
  }
  if (np >= 2 && sxx * np - sx * sx > 0.0)
    sw.loglog_exponent = round12((np * sxy - sx * sy) / (np * sxx - sx * sx));
  return sw;
}

std::string to_json(const SweepResult& sw) {
  // Assemble via the record serializer for the runs; scalars by hand keeps
  // the document key order fixed.
  std::string out = "{\n";
  out += "  \"param\": \"" + sw.param + "\",\n";
  out += "  \"metric_id\": \"" + sw.metric_id + "\",\n";
  auto arr = [](const std::vector<double>& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) {
      if (i) s += ", ";
      s += fmt12(round12(v[i]));
    }
    return s + "]";
  };
  out += "  \"values\": " + arr(sw.values) + ",\n";
  out += "  \"metric\": " + arr(sw.metric) + ",\n";
  out += "  \"distortion\": " + arr(sw.distortion) + ",\n";
  out += std::string("  \"monotone_increasing\": ") +
         (sw.monotone_increasing ? "true" : "false") + ",\n";
  out += "  \"loglog_exponent\": " + fmt12(sw.loglog_exponent) + ",\n";
  std::string runs = to_json(sw.records);
  if (!runs.empty() && runs.back() == '\n') runs.pop_back();
  out += "  \"runs\": " + runs + "\n}\n";
  return out;
}

std::string to_csv(const SweepResult& sw) {
  std::string out = "param,value,metric,distortion,passed\n";
  for (size_t i = 0; i < sw.values.size(); ++i)
    out += sw.param + "," + fmt12(round12(sw.values[i])) + "," +
           fmt12(sw.metric[i]) + "," + fmt12(sw.distortion[i]) + "," +
           (sw.records[i].passed ? "1" : "0") + "\n";
  return out;
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write file '" + path.string() + "'");
  out << text;
}

}  // namespace

std::string emit_report(const SuiteRun& run, const std::string& format,
                        const std::string& out_dir) {
  const std::string doc = format == "csv" ? to_csv({run.record})
                                          : to_json(run.record);
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    const std::string stem = run.record.suite + "-" + run.record.config_hash;
    write_text(std::filesystem::path(out_dir) /
                   (stem + (format == "csv" ? ".csv" : ".json")),
               doc);
    for (const auto& a : run.artifacts)
      write_text(std::filesystem::path(out_dir) / a.name, a.csv);
  }
  return doc;
}

std::string emit_report(const SweepResult& sweep, const std::string& format,
                        const std::string& out_dir) {
  const std::string doc = format == "csv" ? to_csv(sweep) : to_json(sweep);
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    const std::string stem = "sweep-" + sweep.param;
    write_text(std::filesystem::path(out_dir) /
                   (stem + (format == "csv" ? ".csv" : ".json")),
               doc);
  }
  return doc;
}

}  // namespace modelball
