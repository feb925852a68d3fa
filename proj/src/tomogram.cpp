#include "tomokit/tomogram.hpp"

#include <cmath>
#include <string>

namespace tomokit {

namespace {

void check_geometry(const XGrid& x, const std::vector<Frame>& frames,
                    const std::vector<double>& values) {
  x.validate();
  if (frames.empty()) throw ValidationError("tomogram has no frames");
  for (const auto& f : frames) f.validate();
  if (values.size() != frames.size() * static_cast<std::size_t>(x.n_x))
    throw ValidationError("tomogram value count does not match frames * n_x");
  for (double v : values)
    if (!std::isfinite(v))
      throw ValidationError("tomogram contains non-finite values");
}

}  // namespace

Tomogram Tomogram::checked(XGrid x, std::vector<Frame> frames,
                           std::vector<double> values) {
  check_geometry(x, frames, values);
  Tomogram t;
  t.x_ = x;
  t.frames_ = std::move(frames);
  t.values_ = std::move(values);
  for (int f = 0; f < t.frame_count(); ++f) {
    double mass = t.row_mass(f);
    if (std::abs(mass - 1.0) > 1e-4)
      throw ValidationError("tomogram row " + std::to_string(f) +
                            " mass = " + std::to_string(mass) +
                            " deviates from 1 beyond 1e-4");
    for (double v : t.row(f))
      if (v < -1e-9)
        throw ValidationError("tomogram row " + std::to_string(f) +
                              " has negative probability " +
                              std::to_string(v));
  }
  return t;
}

Tomogram Tomogram::unchecked(XGrid x, std::vector<Frame> frames,
                             std::vector<double> values) {
  check_geometry(x, frames, values);
  Tomogram t;
  t.x_ = x;
  t.frames_ = std::move(frames);
  t.values_ = std::move(values);
  return t;
}

double Tomogram::row_mass(int f) const {
  double s = 0.0;
  for (double v : row(f)) s += v;
  return s * x_.dx();
}

Tomogram merge(const std::vector<Tomogram>& parts) {
  if (parts.empty()) throw ValidationError("merge: no tomograms given");
  const XGrid& x = parts.front().x();
  std::vector<Frame> frames;
  std::vector<double> values;
  for (const auto& t : parts) {
    if (!(t.x() == x))
      throw ValidationError("merge: tomograms use inconsistent x grids");
    frames.insert(frames.end(), t.frames().begin(), t.frames().end());
    values.insert(values.end(), t.values().begin(), t.values().end());
  }
  return Tomogram::unchecked(x, std::move(frames), std::move(values));
}

double sample_row(const XGrid& x, std::span<const double> row, double at) {
  double pos = (at - x.x_min) / x.dx();
  if (pos < 0.0 || pos > x.n_x - 1) return 0.0;
  int i = static_cast<int>(pos);
  if (i >= x.n_x - 1) return row[x.n_x - 1];
  double frac = pos - i;
  return row[i] * (1.0 - frac) + row[i + 1] * frac;
}

}  // namespace tomokit
