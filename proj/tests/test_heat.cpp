#include "doctest.h"

#include <cmath>

#include "modelball/heat.hpp"
#include "oracles.hpp"

using namespace modelball;

namespace {

BallPtr flat_ball(int n, double R, int seg) {
  return make_ball(make_profile(ProfileSpec{}), n, R, seg);
}

}  // namespace

TEST_CASE("euclidean heat kernel matches frozen values") {
  CHECK(euclidean_heat_kernel(3, 0.5, 0.35) ==
        doctest::Approx(oracle::kernel3).epsilon(1e-15));
  CHECK(euclidean_heat_kernel(2, 1.0, 0.5) ==
        doctest::Approx(oracle::kernel2).epsilon(1e-15));
  CHECK_THROWS_AS(euclidean_heat_kernel(2, 0.1, 0.0), ConfigError);
}

TEST_CASE("truncated whole-space run reproduces the kernel evolution") {
  // R = 8 sqrt(t_end) keeps the truncation influence below solver error.
  const double t0 = 0.1, t_end = 0.35;
  const BallPtr b = flat_ball(3, 8.0 * std::sqrt(t_end), 1024);
  HeatOptions opt;
  opt.steps = 512;
  opt.bc = HeatBC::TruncatedNeumann;
  const HeatField f = heat_solve_radial(
      b, [](double r) { return euclidean_heat_kernel(3, r, 0.1); }, t0, t_end,
      opt);
  CHECK(f.min_value >= 0.0);
  CHECK(f.mass_drift <= 1e-12);  // Neumann conserves mass

  double dev = 0.0;
  for (double r : {0.0, 0.25, 0.5, 1.0})
    dev = std::max(dev, std::abs(f.value(r, t_end) -
                                 euclidean_heat_kernel(3, r, t_end)));
  CHECK(dev <= 5e-5);
}

TEST_CASE("time stepping is second order") {
  const double t0 = 0.1, t_end = 0.35;
  const BallPtr b = flat_ball(2, 8.0 * std::sqrt(t_end), 2048);
  auto run = [&](int steps) {
    HeatOptions opt;
    opt.steps = steps;
    opt.bc = HeatBC::TruncatedNeumann;
    const HeatField f = heat_solve_radial(
        b, [](double r) { return euclidean_heat_kernel(2, r, 0.1); }, t0,
        t_end, opt);
    double dev = 0.0;
    for (double r : {0.0, 0.4, 0.9})
      dev = std::max(dev, std::abs(f.value(r, t_end) -
                                   euclidean_heat_kernel(2, r, t_end)));
    return dev;
  };
  const double e1 = run(64);
  const double e2 = run(128);
  // Crank-Nicolson: halving the step divides the error by about four, until
  // the fixed spatial error floor shows up.
  CHECK(e2 < e1 / 2.5);
}

TEST_CASE("dirichlet mass decays monotonically and positivity holds") {
  const BallPtr b = flat_ball(3, 1.0, 512);
  HeatOptions opt;
  opt.steps = 256;
  opt.bc = HeatBC::Dirichlet;
  opt.snapshot_times = {0.05, 0.1};
  const HeatField f = heat_solve_radial(
      b,
      [](double r) {
        const double s = 1.0 - r * r;
        return s * s;
      },
      0.0, 0.1, opt);
  CHECK(f.min_value >= 0.0);
  CHECK(f.mass_drift <= 1e-10);
  const double m0 = f.mass_at_row(f.row_at(0.0));
  const double m1 = f.mass_at_row(f.row_at(0.05));
  const double m2 = f.mass_at_row(f.row_at(0.1));
  CHECK(m1 < m0);
  CHECK(m2 < m1);
  CHECK(m2 > 0.0);
}

TEST_CASE("closed sphere run conserves mass without a boundary") {
  ProfileSpec spec;
  spec.kind = ProfileKind::Sphere;
  spec.kappa = 1.0;
  const WarpingProfile p = make_profile(spec);
  const BallPtr b = make_ball(p, 3, p.domain_max(), 1024);
  HeatOptions opt;
  opt.steps = 128;
  opt.bc = HeatBC::TruncatedNeumann;
  const HeatField f = heat_solve_radial(
      b, [](double r) { return std::exp(-4.0 * r * r); }, 0.0, 0.05, opt);
  CHECK(f.mass_drift <= 1e-12);
  CHECK(f.min_value >= 0.0);
}

TEST_CASE("snapshot bookkeeping and interpolation") {
  const BallPtr b = flat_ball(2, 1.0, 128);
  HeatOptions opt;
  opt.steps = 64;
  opt.snapshot_times = {0.025};
  const HeatField f = heat_solve_radial(
      b, [](double r) { return 1.0 - r * r; }, 0.0, 0.05, opt);
  CHECK_NOTHROW(f.row_at(0.025));
  CHECK_THROWS_AS(f.row_at(0.024), ConfigError);
  const int row = f.row_at(0.05);
  // value() at a node reproduces the stored sample.
  const double rn = b->grid.nodes(37);
  CHECK(f.value(rn, 0.05) == doctest::Approx(f.U(row, 37)).epsilon(1e-13));
  CHECK_THROWS_AS(f.value(1.5, 0.05), ConfigError);
}

TEST_CASE("config validation") {
  const BallPtr b = flat_ball(2, 1.0, 64);
  HeatOptions opt;
  opt.steps = 4;  // too few
  CHECK_THROWS_AS(
      heat_solve_radial(b, [](double) { return 1.0; }, 0.0, 0.1, opt),
      ConfigError);
  opt.steps = 64;
  CHECK_THROWS_AS(
      heat_solve_radial(b, [](double) { return -1.0; }, 0.0, 0.1, opt),
      ConfigError);
  CHECK_THROWS_AS(
      heat_solve_radial(b, [](double) { return 1.0; }, 0.2, 0.1, opt),
      ConfigError);
}
