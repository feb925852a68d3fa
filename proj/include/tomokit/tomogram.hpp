#ifndef TOMOKIT_TOMOGRAM_HPP
#define TOMOKIT_TOMOGRAM_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "tomokit/axis.hpp"
#include "tomokit/errors.hpp"
#include "tomokit/frame.hpp"

namespace tomokit {

// Marginal probability rows w(x; mu, nu) over a common x grid, one row per
// frame, stored frame-major.
class Tomogram {
 public:
  Tomogram() = default;

  // Enforces the probability invariants: every row nonnegative within -1e-9
  // and unit mass within 1e-4.
  static Tomogram checked(XGrid x, std::vector<Frame> frames,
                          std::vector<double> values);
  // For rows produced by reconstruction paths that carry small controlled
  // ringing; geometry is still validated.
  static Tomogram unchecked(XGrid x, std::vector<Frame> frames,
                            std::vector<double> values);

  const XGrid& x() const { return x_; }
  const std::vector<Frame>& frames() const { return frames_; }
  int frame_count() const { return static_cast<int>(frames_.size()); }
  const std::vector<double>& values() const { return values_; }

  std::span<const double> row(int f) const {
    return {values_.data() + static_cast<std::size_t>(f) * x_.n_x,
            static_cast<std::size_t>(x_.n_x)};
  }
  std::span<double> mutable_row(int f) {
    return {values_.data() + static_cast<std::size_t>(f) * x_.n_x,
            static_cast<std::size_t>(x_.n_x)};
  }

  double row_mass(int f) const;

 private:
  XGrid x_;
  std::vector<Frame> frames_;
  std::vector<double> values_;
};

// Concatenates tomograms sharing one x grid (frame lists appended in order).
Tomogram merge(const std::vector<Tomogram>& parts);

// Linear interpolation of row samples at an off-grid point; zero outside.
double sample_row(const XGrid& x, std::span<const double> row, double at);

}  // namespace tomokit

#endif
