#ifndef TOMOKIT_FRAME_HPP
#define TOMOKIT_FRAME_HPP

#include <cmath>

#include "tomokit/errors.hpp"

namespace tomokit {

// One rotated/scaled reference frame: the quadrature measured is
// x = mu*q + nu*p.  (mu, nu) = (0, 0) is not a frame.
struct Frame {
  double mu = 1.0;
  double nu = 0.0;

  void validate() const {
    if (!std::isfinite(mu) || !std::isfinite(nu))
      throw ValidationError("frame parameters must be finite");
    if (mu == 0.0 && nu == 0.0)
      throw ValidationError("frame (mu, nu) = (0, 0) is degenerate");
  }

  double norm() const { return std::hypot(mu, nu); }

  bool is_canonical(double tol = 1e-9) const {
    return std::abs(mu * mu + nu * nu - 1.0) <= tol;
  }

  static Frame from_angle(double theta) {
    return Frame{std::cos(theta), std::sin(theta)};
  }

  bool operator==(const Frame& o) const { return mu == o.mu && nu == o.nu; }
};

// Canonical decomposition (mu, nu) = scale * (cos(theta), sin(theta)) with
// theta in [0, pi) and signed scale (negative when the direction had to be
// folded by pi).
struct CanonicalFrame {
  double theta = 0.0;
  double scale = 1.0;  // signed, |scale| = hypot(mu, nu)
};

inline CanonicalFrame canonicalize(const Frame& f) {
  f.validate();
  double r = f.norm();
  double theta = std::atan2(f.nu, f.mu);
  double sign = 1.0;
  if (theta < 0.0) {
    theta += std::acos(-1.0);
    sign = -1.0;
  } else if (theta >= std::acos(-1.0)) {
    theta -= std::acos(-1.0);
    sign = -1.0;
  }
  return CanonicalFrame{theta, sign * r};
}

}  // namespace tomokit

#endif
