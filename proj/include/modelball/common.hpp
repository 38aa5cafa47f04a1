#ifndef MODELBALL_COMMON_HPP
#define MODELBALL_COMMON_HPP

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

namespace modelball {

using Array = Eigen::ArrayXd;
using Matrix = Eigen::MatrixXd;

// Configuration or input that cannot be run (bad keys, out-of-range values,
// inadmissible geometry). CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// A numerical routine failed to converge or produced an unusable state.
// CLI maps this to exit code 3.
struct SolverError : std::runtime_error {
  explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Volume of the unit ball in R^n.
inline double unit_ball_volume(int n) {
  return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

// Area of the unit sphere S^{n-1} = n * omega_n.
inline double unit_sphere_area(int n) { return n * unit_ball_volume(n); }

// Default tolerances shared across modules.
namespace tol {
inline constexpr double curvature = 1e-10;   // f'' and Ricci admission cushion
inline constexpr double apex_slope = 1e-8;   // |f'(0+) - 1|
inline constexpr double quadrature_rel = 1e-11;
inline constexpr double mode_residual = 1e-8;
inline constexpr double eps_log = 1e-12;     // |grad ln u| exclusion threshold
inline constexpr double eps_q = 1e-10;       // Q exclusion threshold (v-residual)
}  // namespace tol

// FNV-1a 64-bit hash, used for config fingerprints.
inline std::string fnv1a_hex(const std::string& text) {
  unsigned long long h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", h);
  return std::string(buf);
}

}  // namespace modelball

#endif
