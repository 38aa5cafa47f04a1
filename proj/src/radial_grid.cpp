#include "modelball/radial_grid.hpp"

namespace modelball {

namespace {

void validate(const Array& nodes, double R, int segments) {
  if (segments < 8) throw ConfigError("grid must have at least 8 segments");
  if (segments % 2 != 0) throw ConfigError("grid segment count must be even");
  for (int i = 1; i < nodes.size(); ++i) {
    if (!(nodes(i) > nodes(i - 1)))
      throw ConfigError("grid nodes must be strictly increasing");
  }
  // Resolution bound near the origin: the documented default R/512 binds for
  // fine grids; coarser grids are bounded by twice their own spacing so the
  // standard refinement sweep {256, 512, 1024} stays constructible.
  const double h_max = std::max(R / 512.0, 2.0 * R / segments);
  if (nodes(1) > h_max * (1.0 + 1e-12))
    throw ConfigError("first grid node exceeds the resolution bound h_max");
}

}  // namespace

RadialGrid RadialGrid::uniform(double R, int segments) {
  if (!(R > 0.0)) throw ConfigError("grid radius must be positive");
  if (segments % 2 != 0) ++segments;
  Array nodes = Array::LinSpaced(segments + 1, 0.0, R);
  nodes(0) = 0.0;
  nodes(segments) = R;
  validate(nodes, R, segments);
  return RadialGrid{nodes, Spacing::Uniform};
}

RadialGrid RadialGrid::end_refined(double R, int segments) {
  if (!(R > 0.0)) throw ConfigError("grid radius must be positive");
  if (segments % 2 != 0) ++segments;
  Array nodes(segments + 1);
  for (int i = 0; i <= segments; ++i) {
    const double x = static_cast<double>(i) / segments;
    nodes(i) = R * 0.5 * (1.0 - std::cos(kPi * x));
  }
  nodes(0) = 0.0;
  nodes(segments) = R;
  validate(nodes, R, segments);
  return RadialGrid{nodes, Spacing::EndRefined};
}

double simpson(const Array& x, const Array& y) {
  const int m = static_cast<int>(x.size()) - 1;
  if (m < 2 || m % 2 != 0 || y.size() != x.size())
    throw ConfigError("simpson: need an even segment count and matching values");
  double total = 0.0;
  for (int i = 0; i + 2 <= m; i += 2) {
    const double h0 = x(i + 1) - x(i);
    const double h1 = x(i + 2) - x(i + 1);
    const double s = h0 + h1;
    total += s / 6.0 *
             ((2.0 - h1 / h0) * y(i) + (s * s / (h0 * h1)) * y(i + 1) +
              (2.0 - h0 / h1) * y(i + 2));
  }
  return total;
}

}  // namespace modelball
