#include "tomokit/grid.hpp"

#include <algorithm>
#include <cmath>

namespace tomokit {

namespace {

void check_invariants(const PhaseSpaceGrid& grid, FieldKind kind,
                      const std::vector<double>& values) {
  grid.validate();
  if (values.size() != grid.size())
    throw ValidationError("field value count does not match grid");
  double lo = values.empty() ? 0.0 : *std::min_element(values.begin(), values.end());
  for (double v : values)
    if (!std::isfinite(v)) throw ValidationError("field contains non-finite values");
  if (kind == FieldKind::Classical && lo < -1e-12)
    throw ValidationError("classical field has negative values");
  if (kind == FieldKind::Wigner && lo < -1.0 / kPi - 1e-9)
    throw ValidationError("Wigner field breaches the -1/pi lower bound");
  double mass = 0.0;
  for (double v : values) mass += v;
  mass *= grid.dq() * grid.dp();
  if (std::abs(mass - 1.0) > 1e-6)
    throw ValidationError("field mass deviates from 1 beyond 1e-6");
}

}  // namespace

PhaseSpaceField PhaseSpaceField::checked(PhaseSpaceGrid grid, FieldKind kind,
                                         std::vector<double> values) {
  check_invariants(grid, kind, values);
  PhaseSpaceField f;
  f.grid_ = grid;
  f.kind_ = kind;
  f.values_ = std::move(values);
  return f;
}

PhaseSpaceField PhaseSpaceField::unchecked(PhaseSpaceGrid grid, FieldKind kind,
                                           std::vector<double> values) {
  grid.validate();
  if (values.size() != grid.size())
    throw ValidationError("field value count does not match grid");
  PhaseSpaceField f;
  f.grid_ = grid;
  f.kind_ = kind;
  f.values_ = std::move(values);
  return f;
}

double PhaseSpaceField::mass() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s * grid_.dq() * grid_.dp();
}

double PhaseSpaceField::min_value() const {
  return *std::min_element(values_.begin(), values_.end());
}

double PhaseSpaceField::max_value() const {
  return *std::max_element(values_.begin(), values_.end());
}

double l1_distance(const PhaseSpaceField& a, const PhaseSpaceField& b) {
  if (!(a.grid() == b.grid()))
    throw ValidationError("l1_distance requires a common grid");
  double s = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i)
    s += std::abs(a.values()[i] - b.values()[i]);
  return s * a.grid().dq() * a.grid().dp();
}

}  // namespace tomokit
