#ifndef MODELBALL_TESTS_ORACLES_HPP
#define MODELBALL_TESTS_ORACLES_HPP

#include <array>
#include <cmath>

// Frozen closed-form reference values (30-digit arithmetic, printed to 17
// significant digits) and an independent Romberg integrator.  Everything here
// is deliberately separate from the library's own numerics.
namespace oracle {

// \int_0^1 dx / (x^2 + 1e-4) = 100 atan(100).
inline constexpr double atan_peak_integral = 156.07966601082314;
// Sphere kappa=1 volumes at R=1: n=2 and n=3.
inline constexpr double sphere2_volume = 2.8883657975136401;
inline constexpr double sphere3_volume = 3.4265431911359223;
// Sphere kappa=1, n=3: sup of (n-1)(1/r - f'/f) on [0,1] and the gap at R.
inline constexpr double sphere3_laplacian_r_sup = 0.71581476813133859;
inline constexpr double sphere_gap_at_1 = 0.3579073840656693;
// Sphere kappa=1: sup |f(r)/r - 1| on (0,1] = 1 - sin(1).
inline constexpr double sphere_distortion = 0.15852901519210349;
// Flat Green's functions at r = 0.5 on the unit ball.
inline constexpr double green2_flat_half = 0.1103178000763258;
inline constexpr double green3_flat_half = 0.079577471545947668;
// Sphere kappa=1, n=2 Green's function at 0.5 and its flat deficit.
inline constexpr double green2_sphere_half = 0.12104836660469835;
inline constexpr double green2_deficit_half = 0.010730566528372555;
// Boundary gradient of the b-function, sphere kappa=1, n=3: 1/sin^2(1).
inline constexpr double b_grad_sphere3 = 1.4122829274373919;
// Sphere kappa=1, n=2, k=1 radial mode tan(r/2)/tan(1/2) at r=0.25,0.5,0.75.
inline constexpr std::array<double, 3> sphere_mode1 = {
    0.23001018467087847, 0.46740025163357505, 0.72052861417158498};
// Harnack ratio of the flat n=3 kernel, (r1,t1,r2,t2) = (1,0.2,0,0.4).
inline constexpr double harnack_offray = 12.182493960703473;
// Flat Poisson kernel at (r, theta, pole) = (0.5, 1.3, 0).
inline constexpr double poisson_half = 0.12149217812312593;
// Sphere kappa=2 warping at r = 0.3: sin(0.3 sqrt 2)/sqrt 2.
inline constexpr double sphere2k_f_03 = 0.29108065372358151;
// Flat heat kernels: n=3 at (0.5, 0.35) and n=2 at (1.0, 0.5).
inline constexpr double kernel3 = 0.090683975594962488;
inline constexpr double kernel2 = 0.096532352630053908;
// Smoothed cone alpha=0.5, scale=0.25: a3 = -(1-alpha)/(3 s^2).
inline constexpr double cone_a3 = -2.6666666666666667;
// Flat n=2 Green at 0.3.
inline constexpr double green2_flat_03 = 0.19161822315668398;
// Sphere kappa=1 n=2 geodesic circle length at r=0.5.
inline constexpr double sphere2_area_half = 3.0123195000445879;

inline constexpr double e_const = 2.7182818284590452;

// Romberg integration on [a, b]; smooth integrands only.
template <class F>
double romberg(const F& f, double a, double b, int max_level = 22,
               double tol = 1e-13) {
  std::array<double, 24> prev{}, cur{};
  const double fa = f(a), fb = f(b);
  prev[0] = 0.5 * (b - a) * (fa + fb);
  long pts = 1;
  double h = b - a;
  for (int k = 1; k <= max_level; ++k) {
    h *= 0.5;
    pts *= 2;
    double sum = 0.0;
    for (long i = 1; i < pts; i += 2) sum += f(a + i * h);
    cur[0] = 0.5 * prev[0] + h * sum;
    double p4 = 4.0;
    for (int j = 1; j <= k; ++j) {
      cur[j] = cur[j - 1] + (cur[j - 1] - prev[j - 1]) / (p4 - 1.0);
      p4 *= 4.0;
    }
    if (k > 3 && std::abs(cur[k] - prev[k - 1]) <=
                     tol * (std::abs(cur[k]) + 1e-300))
      return cur[k];
    prev = cur;
  }
  return cur[max_level];
}

}  // namespace oracle

#endif
