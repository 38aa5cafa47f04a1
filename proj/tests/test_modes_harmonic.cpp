#include "doctest.h"

#include <cmath>

#include "modelball/fourier_harmonic.hpp"
#include "oracles.hpp"

using namespace modelball;

namespace {

BallPtr flat2(int seg = 512) {
  return make_ball(make_profile(ProfileSpec{}), 2, 1.0, seg);
}

BallPtr sphere2(double kappa = 1.0, int seg = 512) {
  ProfileSpec spec;
  spec.kind = ProfileKind::Sphere;
  spec.kappa = kappa;
  return make_ball(make_profile(spec), 2, 1.0, seg);
}

}  // namespace

TEST_CASE("flat radial modes are the monomials r^k") {
  const BallPtr b = flat2();
  for (int k : {1, 2, 5, 16, 64}) {
    const RadialMode m = solve_mode(b, k);
    CHECK(m.residual_sup <= tol::mode_residual);
    double dev = 0.0, ddev = 0.0;
    const auto& r = b->grid.nodes;
    for (int i = 1; i < r.size(); ++i) {
      dev = std::max(dev, std::abs(m.phi(i) - std::pow(r(i), k)));
      ddev = std::max(ddev,
                      std::abs(m.dphi(i) - k * std::pow(r(i), k - 1)));
    }
    CHECK(dev <= 1e-9);
    CHECK(ddev <= 1e-6 * k);
    CHECK(m.phi(r.size() - 1) == 1.0);  // boundary normalization
    CHECK(m.phi(0) == 0.0);
  }
}

TEST_CASE("sphere kappa=1, k=1 mode matches tan(r/2)/tan(1/2)") {
  const BallPtr b = sphere2();
  const RadialMode m = solve_mode(b, 1);
  CHECK(m.residual_sup <= tol::mode_residual);
  const double probes[3] = {0.25, 0.5, 0.75};
  const auto& r = b->grid.nodes;
  for (int p = 0; p < 3; ++p) {
    // Probe radii land on grid nodes (512 segments on [0,1]).
    const int i = static_cast<int>(std::lround(probes[p] * 512));
    CHECK(r(i) == doctest::Approx(probes[p]).epsilon(1e-15));
    CHECK(m.phi(i) == doctest::Approx(oracle::sphere_mode1[p]).epsilon(1e-8));
  }
}

TEST_CASE("mode zero is constant; monotone growth holds") {
  const BallPtr b = sphere2();
  const RadialMode m0 = solve_mode(b, 0);
  CHECK((m0.phi - 1.0).abs().maxCoeff() == 0.0);
  const RadialMode m3 = solve_mode(b, 3);
  for (int i = 1; i < m3.phi.size(); ++i) CHECK(m3.phi(i) >= m3.phi(i - 1));
  CHECK(m3.phi.minCoeff() >= 0.0);
}

TEST_CASE("boundary data: parsing, positivity, evaluation") {
  const BoundaryData c = BoundaryData::cosine(1.0, 0.3, 0.1);
  CHECK(c.eval(0.0, 64) == doctest::Approx(1.3).epsilon(1e-14));

  const BoundaryData file = BoundaryData::from_csv("k,a,b\n0,1.0,0\n2,0.2,0.1\n");
  CHECK(file.terms.size() == 2);
  CHECK(file.terms[1].k == 2);
  CHECK_THROWS_AS(BoundaryData::from_csv("0,1.0\n"), ConfigError);

  const BallPtr b = flat2();
  // a0=1, a1=2 dips negative on the boundary lattice.
  CHECK_THROWS_AS(harmonic_from_boundary(b, BoundaryData::cosine(1.0, 2.0)),
                  ConfigError);
}

TEST_CASE("flat poisson harmonic reproduces the kernel away from the cap") {
  const BallPtr b = flat2();
  const FourierHarmonic u = harmonic_from_boundary(b, BoundaryData::poisson(0.0));
  CHECK(u.min_u > 0.0);
  CHECK(u.dropped_tail <= 2e-7);

  CHECK(poisson_kernel_flat(0.5, 1.3, 0.0) ==
        doctest::Approx(oracle::poisson_half).epsilon(1e-15));
  double dev = 0.0;
  for (double r : {0.2, 0.5}) {
    for (double th : {0.0, 0.9, 2.2, kPi}) {
      dev = std::max(dev,
                     std::abs(u.value(r, th) - poisson_kernel_flat(r, th, 0.0)));
    }
  }
  CHECK(dev <= 1e-12);
  // Near the lattice cap the truncation tail dominates; still tiny.
  CHECK(std::abs(u.value(0.7, kPi) - poisson_kernel_flat(0.7, kPi, 0.0)) <=
        1e-9);
}

TEST_CASE("flat poisson: |grad ln u| equals 2/(1-r^2) at every angle") {
  const BallPtr b = flat2();
  const FourierHarmonic u = harmonic_from_boundary(b, BoundaryData::poisson(0.0));
  double dev = 0.0;
  for (double r : {0.1, 0.35, 0.6})
    for (double th : {0.0, 1.1, 2.0, kPi, 4.4})
      dev = std::max(dev,
                     std::abs(u.log_gradient(r, th) - 2.0 / (1.0 - r * r)));
  CHECK(dev <= 1e-8);
}

TEST_CASE("lattice views agree with pointwise evaluation") {
  const BallPtr b = flat2(128);
  HarmonicOptions opts;
  opts.ntheta = 128;
  const FourierHarmonic u =
      harmonic_from_boundary(b, BoundaryData::cosine(1.0, 0.4), opts);
  const Matrix V = u.value_lattice();
  const Matrix Q = u.q_lattice();
  for (int i : {0, 20, 60}) {
    for (int j : {0, 17, 101}) {
      const double r = u.lat_r(i);
      const double th = u.lat_theta(j);
      CHECK(V(i, j) == doctest::Approx(u.value(r, th)).epsilon(1e-12));
      const double g = u.log_gradient(r, th);
      CHECK(std::sqrt(Q(i, j)) == doctest::Approx(g).epsilon(1e-12));
    }
  }
}
