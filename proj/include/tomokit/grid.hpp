#ifndef TOMOKIT_GRID_HPP
#define TOMOKIT_GRID_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "tomokit/axis.hpp"
#include "tomokit/errors.hpp"

namespace tomokit {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Uniform rectangular phase-space grid (hbar = 1, dimensionless units).
// Samples are half-open along each axis: q_i = q_min + i*dq, i < n_q,
// which keeps the grid periodic-friendly for spectral transforms.
struct PhaseSpaceGrid {
  double q_min = -6.0, q_max = 6.0;
  double p_min = -6.0, p_max = 6.0;
  int n_q = 256, n_p = 256;

  double dq() const { return (q_max - q_min) / n_q; }
  double dp() const { return (p_max - p_min) / n_p; }
  double q(int i) const { return q_min + i * dq(); }
  double p(int j) const { return p_min + j * dp(); }
  std::size_t size() const {
    return static_cast<std::size_t>(n_q) * static_cast<std::size_t>(n_p);
  }

  void validate() const {
    if (n_q < 8 || n_p < 8)
      throw ValidationError("phase-space grid needs n_q >= 8 and n_p >= 8");
    if (!(q_max > q_min) || !(p_max > p_min))
      throw ValidationError("phase-space grid bounds must satisfy max > min");
    if (!std::isfinite(q_min) || !std::isfinite(q_max) ||
        !std::isfinite(p_min) || !std::isfinite(p_max))
      throw ValidationError("phase-space grid bounds must be finite");
  }

  XGrid q_axis() const { return XGrid{q_min, q_max, n_q}; }
  XGrid p_axis() const { return XGrid{p_min, p_max, n_p}; }

  bool operator==(const PhaseSpaceGrid& o) const {
    return q_min == o.q_min && q_max == o.q_max && p_min == o.p_min &&
           p_max == o.p_max && n_q == o.n_q && n_p == o.n_p;
  }
};

enum class FieldKind : std::uint8_t { Classical = 0, Wigner = 1 };

// A sampled phase-space function: classical distribution f(q,p) or Wigner
// function W(q,p).  Values are stored row-major with the q index outer.
// Construction through `checked` enforces the state invariants (unit mass,
// positivity for classical kind, the -1/pi floor for Wigner kind);
// reconstruction paths that carry controlled numerical ringing use
// `unchecked` and report diagnostics instead.
class PhaseSpaceField {
 public:
  PhaseSpaceField() = default;

  static PhaseSpaceField checked(PhaseSpaceGrid grid, FieldKind kind,
                                 std::vector<double> values);
  static PhaseSpaceField unchecked(PhaseSpaceGrid grid, FieldKind kind,
                                   std::vector<double> values);

  const PhaseSpaceGrid& grid() const { return grid_; }
  FieldKind kind() const { return kind_; }
  const std::vector<double>& values() const { return values_; }

  double at(int i, int j) const {
    return values_[static_cast<std::size_t>(i) * grid_.n_p + j];
  }

  double mass() const;
  double min_value() const;
  double max_value() const;

  // Midpoint-rule expectation of fn(q, p) against the field.
  template <class F>
  double expectation(F&& fn) const {
    double s = 0.0;
    for (int i = 0; i < grid_.n_q; ++i) {
      double q = grid_.q(i);
      for (int j = 0; j < grid_.n_p; ++j)
        s += fn(q, grid_.p(j)) * at(i, j);
    }
    return s * grid_.dq() * grid_.dp();
  }

 private:
  PhaseSpaceGrid grid_;
  FieldKind kind_ = FieldKind::Classical;
  std::vector<double> values_;
};

// Integral |a - b| dq dp over a common grid.
double l1_distance(const PhaseSpaceField& a, const PhaseSpaceField& b);

}  // namespace tomokit

#endif
