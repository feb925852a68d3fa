#ifndef TOMOKIT_AXIS_HPP
#define TOMOKIT_AXIS_HPP

#include <cmath>
#include <vector>

#include "tomokit/errors.hpp"

namespace tomokit {

// Uniform 1-D sample axis, half-open: samples at min + i*step(), i < n.
struct XGrid {
  double x_min = 0.0;
  double x_max = 0.0;
  int n_x = 0;

  double dx() const { return (x_max - x_min) / n_x; }
  double x(int i) const { return x_min + i * dx(); }

  void validate() const {
    if (!(n_x >= 2)) throw ValidationError("x grid needs at least 2 samples");
    if (!(x_max > x_min) || !std::isfinite(x_min) || !std::isfinite(x_max))
      throw ValidationError("x grid bounds must be finite with x_max > x_min");
  }

  bool operator==(const XGrid& o) const {
    return x_min == o.x_min && x_max == o.x_max && n_x == o.n_x;
  }
};

// Rectangle-rule integral of samples on an XGrid.
inline double integrate(const XGrid& g, const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s * g.dx();
}

}  // namespace tomokit

#endif
