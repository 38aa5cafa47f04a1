#include "modelball/warping_profile.hpp"

#include <sstream>

namespace modelball {

std::string to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::Euclidean: return "euclidean";
    case ProfileKind::Sphere: return "sphere";
    case ProfileKind::SmoothedCone: return "smoothed-cone";
    case ProfileKind::Custom: return "custom";
  }
  return "?";
}

double WarpingProfile::f(double r) const {
  switch (kind_) {
    case ProfileKind::Euclidean:
      return r;
    case ProfileKind::Sphere: {
      const double s = std::sqrt(kappa_);
      return std::sin(s * r) / s;
    }
    case ProfileKind::SmoothedCone:
      return alpha_ * r + (1.0 - alpha_) * scale_ * std::tanh(r / scale_);
    case ProfileKind::Custom:
      return custom_.value(r);
  }
  return 0.0;
}

double WarpingProfile::fp(double r) const {
  switch (kind_) {
    case ProfileKind::Euclidean:
      return 1.0;
    case ProfileKind::Sphere:
      return std::cos(std::sqrt(kappa_) * r);
    case ProfileKind::SmoothedCone: {
      const double c = std::cosh(r / scale_);
      return alpha_ + (1.0 - alpha_) / (c * c);
    }
    case ProfileKind::Custom:
      return custom_.deriv(r);
  }
  return 0.0;
}

double WarpingProfile::fpp(double r) const {
  switch (kind_) {
    case ProfileKind::Euclidean:
      return 0.0;
    case ProfileKind::Sphere:
      return -kappa_ * f(r);
    case ProfileKind::SmoothedCone: {
      const double c = std::cosh(r / scale_);
      return -2.0 * (1.0 - alpha_) / scale_ * std::tanh(r / scale_) / (c * c);
    }
    case ProfileKind::Custom:
      return custom_.deriv2(r);
  }
  return 0.0;
}

namespace {

// Order-4 central differences for nodal second derivatives of uniform
// samples; one-sided order-4 stencils at the ends.
Array fd4_second(const Array& x, const Array& y) {
  const int n = static_cast<int>(x.size());
  if (n < 6) throw ConfigError("sampled profile needs at least 6 samples");
  const double h = x(1) - x(0);
  for (int i = 1; i < n; ++i)
    if (std::abs((x(i) - x(i - 1)) - h) > 1e-9 * h)
      throw ConfigError(
          "sampled profile without a curvature column needs uniform spacing");
  Array out(n);
  auto at = [&](int i) { return y(i); };
  for (int i = 2; i < n - 2; ++i)
    out(i) = (-at(i - 2) + 16 * at(i - 1) - 30 * at(i) + 16 * at(i + 1) -
              at(i + 2)) /
             (12 * h * h);
  // One-sided stencils (order 4).
  out(0) = (45 * at(0) - 154 * at(1) + 214 * at(2) - 156 * at(3) + 61 * at(4) -
            10 * at(5)) /
           (12 * h * h);
  out(1) = (10 * at(0) - 15 * at(1) - 4 * at(2) + 14 * at(3) - 6 * at(4) +
            at(5)) /
           (12 * h * h);
  out(n - 2) = (10 * at(n - 1) - 15 * at(n - 2) - 4 * at(n - 3) +
                14 * at(n - 4) - 6 * at(n - 5) + at(n - 6)) /
               (12 * h * h);
  out(n - 1) = (45 * at(n - 1) - 154 * at(n - 2) + 214 * at(n - 3) -
                156 * at(n - 4) + 61 * at(n - 5) - 10 * at(n - 6)) /
               (12 * h * h);
  return out;
}

}  // namespace

WarpingProfile make_profile(const ProfileSpec& spec, double tol_curv) {
  WarpingProfile p;
  p.kind_ = spec.kind;
  switch (spec.kind) {
    case ProfileKind::Euclidean:
      p.domain_max_ = 1e9;
      p.a3_ = 0.0;
      break;
    case ProfileKind::Sphere:
      if (!(spec.kappa > 0.0))
        throw ConfigError("sphere profile needs kappa > 0");
      p.kappa_ = spec.kappa;
      p.domain_max_ = (1.0 - 1e-6) * kPi / std::sqrt(spec.kappa);
      p.a3_ = -spec.kappa / 6.0;
      break;
    case ProfileKind::SmoothedCone:
      if (!(spec.alpha > 0.0) || spec.alpha > 1.0)
        throw ConfigError("smoothed-cone profile needs alpha in (0, 1]");
      if (!(spec.cone_scale > 0.0))
        throw ConfigError("smoothed-cone profile needs a positive scale");
      p.alpha_ = spec.alpha;
      p.scale_ = spec.cone_scale;
      p.domain_max_ = 1e9;
      p.a3_ = -(1.0 - spec.alpha) / (3.0 * spec.cone_scale * spec.cone_scale);
      break;
    case ProfileKind::Custom: {
      const Array& r = spec.sample_r;
      const Array& fv = spec.sample_f;
      const int n = static_cast<int>(r.size());
      if (n < 6 || fv.size() != n)
        throw ConfigError("sampled profile needs >= 6 matching samples");
      for (int i = 1; i < n; ++i)
        if (!(r(i) > r(i - 1)))
          throw ConfigError("sampled profile abscissae must be strictly increasing");
      if (r(0) != 0.0)
        throw ConfigError("sampled profile must start at r = 0");
      if (std::abs(fv(0)) > 1e-14)
        throw ConfigError("sampled profile must have f(0) = 0");
      CubicSpline s(r, fv);
      Array fp(n);
      for (int i = 0; i < n; ++i) fp(i) = s.deriv(r(i));
      Array fpp = spec.sample_fpp ? *spec.sample_fpp : fd4_second(r, fv);
      if (fpp.size() != n)
        throw ConfigError("curvature column length mismatch");
      p.custom_ = QuinticHermite(r, fv, fp, fpp);
      p.domain_max_ = r(n - 1);
      p.a3_ = fpp(1) / (6.0 * r(1));
      break;
    }
  }

  // Invariant sweep: apex slope, positivity, concavity.  The first offending
  // radius is reported.
  const double probe_max =
      std::min(p.domain_max_, spec.kind == ProfileKind::Sphere
                                  ? p.domain_max_
                                  : 32.0 * std::max(1.0, p.scale_));
  const int probes = 2048;
  const double slope0 = p.fp(0.0);
  if (std::abs(slope0 - 1.0) > tol::apex_slope)
    throw ConfigError("profile violates f'(0) = 1: got " +
                      std::to_string(slope0));
  for (int i = 1; i <= probes; ++i) {
    const double r = probe_max * i / probes;
    const double fv = p.f(r);
    if (!(fv > 0.0))
      throw ConfigError("profile violates f > 0 at r = " + std::to_string(r));
    const double c = p.fpp(r);
    if (c > tol_curv)
      throw ConfigError("profile violates concavity (f'' = " +
                        std::to_string(c) + ") at r = " + std::to_string(r));
  }
  return p;
}

ProfileSpec parse_profile_descriptor(const std::string& text) {
  ProfileSpec spec;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_kind = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("descriptor line " + std::to_string(lineno) +
                        ": expected key=value");
    const std::string key = line.substr(first, eq - first);
    const std::string value = line.substr(eq + 1);
    if (key == "kind") {
      have_kind = true;
      if (value == "euclidean") spec.kind = ProfileKind::Euclidean;
      else if (value == "sphere") spec.kind = ProfileKind::Sphere;
      else if (value == "smoothed-cone") spec.kind = ProfileKind::SmoothedCone;
      else if (value == "custom") spec.kind = ProfileKind::Custom;
      else
        throw ConfigError("descriptor line " + std::to_string(lineno) +
                          ": unknown kind '" + value + "'");
    } else if (key == "kappa") {
      spec.kappa = std::stod(value);
    } else if (key == "alpha") {
      spec.alpha = std::stod(value);
    } else if (key == "cone_scale") {
      spec.cone_scale = std::stod(value);
    } else if (key == "R" || key == "n" || key == "grid") {
      // Ball-level keys are legal in descriptors and consumed by the caller.
    } else {
      throw ConfigError("descriptor line " + std::to_string(lineno) +
                        ": unknown key '" + key + "'");
    }
  }
  if (!have_kind) throw ConfigError("descriptor is missing key 'kind'");
  return spec;
}

}  // namespace modelball
