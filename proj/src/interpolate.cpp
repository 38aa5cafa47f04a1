#include "modelball/interpolate.hpp"

#include <algorithm>

namespace modelball {

namespace {

int locate(const Array& x, double r) {
  const int n = static_cast<int>(x.size());
  if (r <= x(0)) return 0;
  if (r >= x(n - 1)) return n - 2;
  const double* begin = x.data();
  int i = static_cast<int>(std::upper_bound(begin, begin + n, r) - begin) - 1;
  return std::clamp(i, 0, n - 2);
}

}  // namespace

CubicSpline::CubicSpline(const Array& x, const Array& y) : x_(x), y_(y) {
  const int n = static_cast<int>(x.size());
  if (n < 3 || y.size() != n)
    throw ConfigError("spline needs at least 3 matching samples");
  for (int i = 1; i < n; ++i)
    if (!(x(i) > x(i - 1)))
      throw ConfigError("spline abscissae must be strictly increasing");
  // Tridiagonal system for interior second derivatives, natural ends.
  Array a(n), b(n), c(n), d(n);
  m_ = Array::Zero(n);
  b(0) = 1.0; c(0) = 0.0; d(0) = 0.0; a(0) = 0.0;
  for (int i = 1; i < n - 1; ++i) {
    const double hl = x(i) - x(i - 1);
    const double hr = x(i + 1) - x(i);
    a(i) = hl / 6.0;
    b(i) = (hl + hr) / 3.0;
    c(i) = hr / 6.0;
    d(i) = (y(i + 1) - y(i)) / hr - (y(i) - y(i - 1)) / hl;
  }
  a(n - 1) = 0.0; b(n - 1) = 1.0; c(n - 1) = 0.0; d(n - 1) = 0.0;
  for (int i = 1; i < n; ++i) {
    const double w = a(i) / b(i - 1);
    b(i) -= w * c(i - 1);
    d(i) -= w * d(i - 1);
  }
  m_(n - 1) = d(n - 1) / b(n - 1);
  for (int i = n - 2; i >= 0; --i) m_(i) = (d(i) - c(i) * m_(i + 1)) / b(i);
}

int CubicSpline::interval(double r) const { return locate(x_, r); }

double CubicSpline::value(double r) const {
  const int i = interval(r);
  const double h = x_(i + 1) - x_(i);
  const double A = (x_(i + 1) - r) / h;
  const double B = (r - x_(i)) / h;
  return A * y_(i) + B * y_(i + 1) +
         ((A * A * A - A) * m_(i) + (B * B * B - B) * m_(i + 1)) * h * h / 6.0;
}

double CubicSpline::deriv(double r) const {
  const int i = interval(r);
  const double h = x_(i + 1) - x_(i);
  const double A = (x_(i + 1) - r) / h;
  const double B = (r - x_(i)) / h;
  return (y_(i + 1) - y_(i)) / h -
         (3.0 * A * A - 1.0) / 6.0 * h * m_(i) +
         (3.0 * B * B - 1.0) / 6.0 * h * m_(i + 1);
}

double CubicSpline::deriv2(double r) const {
  const int i = interval(r);
  const double h = x_(i + 1) - x_(i);
  const double A = (x_(i + 1) - r) / h;
  const double B = (r - x_(i)) / h;
  return A * m_(i) + B * m_(i + 1);
}

QuinticHermite::QuinticHermite(const Array& x, const Array& f, const Array& fp,
                               const Array& fpp)
    : x_(x), f_(f), fp_(fp), fpp_(fpp) {
  const int n = static_cast<int>(x.size());
  if (n < 2 || f.size() != n || fp.size() != n || fpp.size() != n)
    throw ConfigError("quintic Hermite needs matching nodal data");
  for (int i = 1; i < n; ++i)
    if (!(x(i) > x(i - 1)))
      throw ConfigError("quintic Hermite abscissae must be strictly increasing");
}

int QuinticHermite::interval(double r) const { return locate(x_, r); }

namespace {

// Quintic basis on [0, 1]: H(0)=d0 data, H(1)=d1 data.
void quintic_eval(double t, double h, double f0, double p0, double s0,
                  double f1, double p1, double s1, double* v, double* d1v,
                  double* d2v) {
  // Coefficients of the quintic in t matching value/first/second derivative
  // at t = 0 and t = 1 (derivatives scaled by h).
  const double P0 = p0 * h, P1 = p1 * h;
  const double S0 = s0 * h * h, S1 = s1 * h * h;
  const double c0 = f0;
  const double c1 = P0;
  const double c2 = 0.5 * S0;
  const double c3 = 10.0 * (f1 - f0) - 6.0 * P0 - 4.0 * P1 + (S1 - 3.0 * S0) * 0.5;
  const double c4 = -15.0 * (f1 - f0) + 8.0 * P0 + 7.0 * P1 + (3.0 * S0 - 2.0 * S1) * 0.5;
  const double c5 = 6.0 * (f1 - f0) - 3.0 * (P0 + P1) + (S1 - S0) * 0.5;
  if (v) *v = c0 + t * (c1 + t * (c2 + t * (c3 + t * (c4 + t * c5))));
  if (d1v)
    *d1v = (c1 + t * (2.0 * c2 + t * (3.0 * c3 + t * (4.0 * c4 + t * 5.0 * c5)))) / h;
  if (d2v)
    *d2v = (2.0 * c2 + t * (6.0 * c3 + t * (12.0 * c4 + t * 20.0 * c5))) / (h * h);
}

}  // namespace

double QuinticHermite::value(double r) const {
  const int i = interval(r);
  const double h = x_(i + 1) - x_(i);
  double v;
  quintic_eval((r - x_(i)) / h, h, f_(i), fp_(i), fpp_(i), f_(i + 1),
               fp_(i + 1), fpp_(i + 1), &v, nullptr, nullptr);
  return v;
}

double QuinticHermite::deriv(double r) const {
  const int i = interval(r);
  const double h = x_(i + 1) - x_(i);
  double d;
  quintic_eval((r - x_(i)) / h, h, f_(i), fp_(i), fpp_(i), f_(i + 1),
               fp_(i + 1), fpp_(i + 1), nullptr, &d, nullptr);
  return d;
}

double QuinticHermite::deriv2(double r) const {
  const int i = interval(r);
  const double h = x_(i + 1) - x_(i);
  double d2;
  quintic_eval((r - x_(i)) / h, h, f_(i), fp_(i), fpp_(i), f_(i + 1),
               fp_(i + 1), fpp_(i + 1), nullptr, nullptr, &d2);
  return d2;
}

void cubic_hermite(const Array& x, const Array& f, const Array& fp, double r,
                   double& value, double& deriv) {
  const int i = locate(x, r);
  const double h = x(i + 1) - x(i);
  const double t = (r - x(i)) / h;
  const double h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
  const double h10 = t * (1.0 - t) * (1.0 - t);
  const double h01 = t * t * (3.0 - 2.0 * t);
  const double h11 = t * t * (t - 1.0);
  value = h00 * f(i) + h10 * h * fp(i) + h01 * f(i + 1) + h11 * h * fp(i + 1);
  const double g00 = 6.0 * t * (t - 1.0);
  const double g10 = (1.0 - t) * (1.0 - 3.0 * t);
  const double g01 = -g00;
  const double g11 = t * (3.0 * t - 2.0);
  deriv = (g00 * f(i) + g01 * f(i + 1)) / h + g10 * fp(i) + g11 * fp(i + 1);
}

double hermite9_deriv2(const Array& x, const Array& f, const Array& fp, int i0,
                       int stride, int i) {
  // Hermite-Newton divided differences with each of the 5 nodes doubled;
  // shifted so the evaluation point is the origin for conditioning.
  constexpr int m = 10;
  double z[m], q[m];
  const double xc = x(i);
  for (int j = 0; j < 5; ++j) {
    z[2 * j] = x(i0 + j * stride) - xc;
    z[2 * j + 1] = z[2 * j];
    q[2 * j] = f(i0 + j * stride);
    q[2 * j + 1] = f(i0 + j * stride);
  }
  double table[m][m];
  for (int j = 0; j < m; ++j) table[j][0] = q[j];
  for (int j = 1; j < m; ++j) {
    if (z[j] == z[j - 1])
      table[j][1] = fp(i0 + (j / 2) * stride);
    else
      table[j][1] = (table[j][0] - table[j - 1][0]) / (z[j] - z[j - 1]);
  }
  for (int c = 2; c < m; ++c)
    for (int j = c; j < m; ++j)
      table[j][c] = (table[j][c - 1] - table[j - 1][c - 1]) / (z[j] - z[j - c]);
  // Horner evaluation at 0 with first and second derivative accumulation.
  double p = table[m - 1][m - 1], dp = 0.0, d2p = 0.0;
  for (int j = m - 2; j >= 0; --j) {
    const double w = -z[j];
    d2p = d2p * w + 2.0 * dp;
    dp = dp * w + p;
    p = p * w + table[j][j];
  }
  return d2p;
}

}  // namespace modelball
