#ifndef MODELBALL_WARPING_PROFILE_HPP
#define MODELBALL_WARPING_PROFILE_HPP

#include "modelball/common.hpp"
#include "modelball/interpolate.hpp"

#include <optional>
#include <string>

namespace modelball {

enum class ProfileKind { Euclidean, Sphere, SmoothedCone, Custom };

std::string to_string(ProfileKind kind);

// Input for make_profile.  Sampled (custom) profiles supply strictly
// increasing abscissae starting at r = 0 with f(0) = 0; the curvature column
// is optional (order-4 finite differences otherwise, uniform samples only).
struct ProfileSpec {
  ProfileKind kind = ProfileKind::Euclidean;
  double kappa = 1.0;       // sphere curvature, > 0
  double alpha = 1.0;       // smoothed-cone asymptotic slope, (0, 1]
  double cone_scale = 1.0;  // smoothing length of the cone apex
  Array sample_r, sample_f;
  std::optional<Array> sample_fpp;
};

// Warping function f of the rotationally symmetric metric
// g = dr^2 + f(r)^2 g_{S^{n-1}}: f(0) = 0, f'(0) = 1, f'' <= 0, f > 0 on
// (0, domain_max].
class WarpingProfile {
 public:
  ProfileKind kind() const { return kind_; }
  double domain_max() const { return domain_max_; }
  double kappa() const { return kappa_; }
  double alpha() const { return alpha_; }

  double f(double r) const;
  double fp(double r) const;
  double fpp(double r) const;
  // Leading odd-series coefficient a3 in f = r + a3 r^3 + ...; feeds the
  // Frobenius launch of radial mode solves.
  double a3() const { return a3_; }

  friend WarpingProfile make_profile(const ProfileSpec& spec, double tol_curv);

 private:
  ProfileKind kind_ = ProfileKind::Euclidean;
  double kappa_ = 0.0, alpha_ = 1.0, scale_ = 1.0;
  double domain_max_ = 0.0, a3_ = 0.0;
  QuinticHermite custom_;
};

// Validates the profile invariants (apex conditions, positivity, concavity up
// to tol_curv) and returns the admitted profile; violations report the first
// offending radius.
WarpingProfile make_profile(const ProfileSpec& spec,
                            double tol_curv = tol::curvature);

// Profile descriptor files are line-oriented key=value text sharing the suite
// config vocabulary (kind, kappa, alpha, ...).
ProfileSpec parse_profile_descriptor(const std::string& text);

}  // namespace modelball

#endif
