#ifndef MODELBALL_INTERPOLATE_HPP
#define MODELBALL_INTERPOLATE_HPP

#include "modelball/common.hpp"

namespace modelball {

// C2 cubic spline with natural end conditions (s'' = 0 at both ends).
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(const Array& x, const Array& y);

  double value(double r) const;
  double deriv(double r) const;
  double deriv2(double r) const;
  const Array& x() const { return x_; }
  const Array& y() const { return y_; }

 private:
  int interval(double r) const;
  Array x_, y_, m_;  // m_ holds nodal second derivatives
};

// Piecewise quintic Hermite on nodal (value, first, second derivative) data;
// C2 by construction and reproduces the supplied derivatives exactly.
class QuinticHermite {
 public:
  QuinticHermite() = default;
  QuinticHermite(const Array& x, const Array& f, const Array& fp,
                 const Array& fpp);

  double value(double r) const;
  double deriv(double r) const;
  double deriv2(double r) const;

 private:
  int interval(double r) const;
  Array x_, f_, fp_, fpp_;
};

// Cubic Hermite interpolation of (value, derivative) node data; returns the
// interpolated value and derivative at r.
void cubic_hermite(const Array& x, const Array& f, const Array& fp, double r,
                   double& value, double& deriv);

// Second derivative at x[i] of the degree-9 polynomial matching (f, fp) at
// the five nodes x[i0 + j*stride].  Used as an integrator-independent ODE
// defect probe; the stride widens the window so nodal noise is not amplified
// beyond the certificate.
double hermite9_deriv2(const Array& x, const Array& f, const Array& fp, int i0,
                       int stride, int i);

}  // namespace modelball

#endif
