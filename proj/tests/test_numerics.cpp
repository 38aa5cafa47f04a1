#include "doctest.h"

#include <cmath>

#include "modelball/interpolate.hpp"
#include "modelball/ode.hpp"
#include "modelball/quadrature.hpp"
#include "modelball/radial_grid.hpp"
#include "oracles.hpp"

using namespace modelball;

TEST_CASE("radial grids: shape and validation") {
  const RadialGrid g = RadialGrid::uniform(2.0, 64);
  CHECK(g.segments() == 64);
  CHECK(g.nodes(0) == 0.0);
  CHECK(g.R() == doctest::Approx(2.0).epsilon(1e-15));
  for (int i = 1; i < g.nodes.size(); ++i) CHECK(g.nodes(i) > g.nodes(i - 1));

  const RadialGrid e = RadialGrid::end_refined(1.0, 128);
  CHECK(e.segments() == 128);
  // End refinement compresses the last segment below the uniform width.
  const double last = e.nodes(128) - e.nodes(127);
  CHECK(last < 1.0 / 128);

  CHECK_THROWS_AS(RadialGrid::uniform(1.0, 3), ConfigError);   // odd
  CHECK_THROWS_AS(RadialGrid::uniform(-1.0, 64), ConfigError);
}

TEST_CASE("composite simpson exactness: cubics on midpoint pairs, quadratics in general") {
  // Non-uniform pair widths, but each pair's middle node sits at the pair
  // midpoint: the generalized rule is then cubic-exact.
  Array x(7), y(7);
  const double xs[7] = {0.0, 0.155, 0.31, 0.46, 0.61, 0.805, 1.0};
  for (int i = 0; i < 7; ++i) {
    x(i) = xs[i];
    y(i) = xs[i] * xs[i] * xs[i];
  }
  CHECK(simpson(x, y) == doctest::Approx(0.25).epsilon(1e-14));

  // Fully asymmetric pairs remain exact on quadratics.
  Array xq(7), yq(7);
  const double qs[7] = {0.0, 0.13, 0.31, 0.42, 0.61, 0.83, 1.0};
  for (int i = 0; i < 7; ++i) {
    xq(i) = qs[i];
    yq(i) = qs[i] * qs[i] + 2.0 * qs[i] - 0.5;
  }
  CHECK(simpson(xq, yq) ==
        doctest::Approx(1.0 / 3.0 + 1.0 - 0.5).epsilon(1e-14));
}

TEST_CASE("adaptive quadrature: closed forms") {
  auto r1 = integrate_adaptive([](double t) { return std::exp(t); }, 0.0, 1.0);
  CHECK(r1.converged);
  CHECK(r1.value ==
        doctest::Approx(oracle::e_const - 1.0).epsilon(1e-13));

  auto r2 = integrate_adaptive([](double t) { return std::sin(t); }, 0.0, kPi);
  CHECK(r2.value == doctest::Approx(2.0).epsilon(1e-13));

  // Sharp peak at the left end exercises the bisection.
  auto r3 = integrate_adaptive(
      [](double t) { return 1.0 / (t * t + 1e-4); }, 0.0, 1.0);
  CHECK(r3.converged);
  CHECK(r3.value ==
        doctest::Approx(oracle::atan_peak_integral).epsilon(1e-11));
}

TEST_CASE("cubic spline interpolates and converges") {
  const int m = 101;
  Array x = Array::LinSpaced(m, 0.0, kPi);
  Array y = x.sin();
  const CubicSpline s(x, y);
  for (int i = 0; i < m; ++i)
    CHECK(s.value(x(i)) == doctest::Approx(y(i)).epsilon(1e-14));
  double dev = 0.0, dev1 = 0.0;
  for (int j = 1; j < 400; ++j) {
    const double r = kPi * j / 400.0;
    dev = std::max(dev, std::abs(s.value(r) - std::sin(r)));
    if (r > 0.3 && r < kPi - 0.3)
      dev1 = std::max(dev1, std::abs(s.deriv(r) - std::cos(r)));
  }
  CHECK(dev < 5e-7);
  CHECK(dev1 < 5e-5);
}

TEST_CASE("quintic hermite reproduces quintics exactly") {
  Array x = Array::LinSpaced(5, 0.0, 2.0);
  Array f(5), fp(5), fpp(5);
  auto p = [](double t) { return ((t - 2.0) * t * t + 1.0) * t * t - 3.0 * t; };
  auto pd = [](double t) {
    return 5.0 * t * t * t * t - 8.0 * t * t * t + 2.0 * t - 3.0;
  };
  auto pdd = [](double t) { return 20.0 * t * t * t - 24.0 * t * t + 2.0; };
  for (int i = 0; i < 5; ++i) {
    f(i) = p(x(i));
    fp(i) = pd(x(i));
    fpp(i) = pdd(x(i));
  }
  const QuinticHermite q(x, f, fp, fpp);
  for (double t : {0.11, 0.73, 1.21, 1.77, 1.999}) {
    CHECK(q.value(t) == doctest::Approx(p(t)).epsilon(1e-12));
    CHECK(q.deriv(t) == doctest::Approx(pd(t)).epsilon(1e-11));
    CHECK(q.deriv2(t) == doctest::Approx(pdd(t)).epsilon(1e-10));
  }
}

TEST_CASE("cubic hermite reproduces cubics exactly") {
  Array x = Array::LinSpaced(6, 0.0, 1.0);
  Array f(6), fp(6);
  for (int i = 0; i < 6; ++i) {
    f(i) = x(i) * x(i) * x(i) - x(i);
    fp(i) = 3.0 * x(i) * x(i) - 1.0;
  }
  double v = 0.0, d = 0.0;
  cubic_hermite(x, f, fp, 0.35, v, d);
  CHECK(v == doctest::Approx(0.35 * 0.35 * 0.35 - 0.35).epsilon(1e-14));
  CHECK(d == doctest::Approx(3.0 * 0.35 * 0.35 - 1.0).epsilon(1e-13));
}

TEST_CASE("degree-9 hermite reconstruction differentiates x^9 exactly") {
  Array x = Array::LinSpaced(5, 1.0, 2.0);
  Array f(5), fp(5);
  for (int i = 0; i < 5; ++i) {
    f(i) = std::pow(x(i), 9);
    fp(i) = 9.0 * std::pow(x(i), 8);
  }
  for (int i = 0; i < 5; ++i) {
    const double want = 72.0 * std::pow(x(i), 7);
    CHECK(hermite9_deriv2(x, f, fp, 0, 1, i) ==
          doctest::Approx(want).epsilon(1e-10));
  }
}

TEST_CASE("dormand-prince node integrator hits closed forms") {
  Array xs = Array::LinSpaced(11, 0.0, 1.0);
  auto rhs = [](double, const Eigen::Matrix<double, 1, 1>& y) {
    return Eigen::Matrix<double, 1, 1>(y(0));
  };
  Eigen::Matrix<double, 1, 1> y0(1.0);
  auto out = integrate_nodes<1>(rhs, y0, xs, 1e-12, 1e-14);
  CHECK(out(10, 0) == doctest::Approx(oracle::e_const).epsilon(1e-11));

  // Harmonic oscillator: y'' = -y integrated as a 2-system to pi/3.
  Array xs2 = Array::LinSpaced(7, 0.0, kPi / 3.0);
  auto rhs2 = [](double, const Eigen::Matrix<double, 2, 1>& y) {
    return Eigen::Matrix<double, 2, 1>(y(1), -y(0));
  };
  Eigen::Matrix<double, 2, 1> z0(1.0, 0.0);
  auto out2 = integrate_nodes<2>(rhs2, z0, xs2, 1e-12, 1e-14);
  CHECK(out2(6, 0) == doctest::Approx(0.5).epsilon(1e-11));
}
