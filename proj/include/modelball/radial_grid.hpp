#ifndef MODELBALL_RADIAL_GRID_HPP
#define MODELBALL_RADIAL_GRID_HPP

#include "modelball/common.hpp"

namespace modelball {

enum class Spacing { Uniform, EndRefined };

// Radial node set 0 = r_0 < r_1 < ... < r_m = R.  The segment count is kept
// even so composite Simpson weights always apply.  Ratio-valued quantities are
// evaluated from r_1 on; r_0 = 0 carries series limits.
struct RadialGrid {
  Array nodes;
  Spacing spacing = Spacing::Uniform;

  int segments() const { return static_cast<int>(nodes.size()) - 1; }
  double R() const { return nodes(nodes.size() - 1); }
  double r(int i) const { return nodes(i); }

  static RadialGrid uniform(double R, int segments);
  // Smooth two-sided clustering toward r = 0 and r = R.
  static RadialGrid end_refined(double R, int segments);
};

// Composite Simpson on consecutive node triples (handles non-uniform spacing).
double simpson(const Array& x, const Array& y);

}  // namespace modelball

#endif
