#ifndef TOMOKIT_INFORMATION_HPP
#define TOMOKIT_INFORMATION_HPP

#include <vector>

#include "tomokit/grid.hpp"

namespace tomokit {

// Probability density over frame angles theta in [0, pi), sampled at the
// midpoints theta_k = (k + 1/2) pi / n.  The ideal reference measure is the
// uniform density 1/pi.
class FrameDistribution {
 public:
  static FrameDistribution uniform(int n_theta);
  // Validates nonnegativity and unit mass (within 1e-6).
  static FrameDistribution from_samples(std::vector<double> density);
  // Rescales nonnegative samples to unit mass first.
  static FrameDistribution normalized(std::vector<double> density);

  int size() const { return static_cast<int>(p_.size()); }
  double dtheta() const { return kPi / size(); }
  double theta(int k) const { return (k + 0.5) * dtheta(); }
  const std::vector<double>& density() const { return p_; }
  double mass() const;

 private:
  std::vector<double> p_;
};

// Relative entropy H(P||Q) = -int P log(Q/P) dtheta in nats, midpoint rule,
// with 0 log 0 = 0.  P carrying weight where Q vanishes is a hard error.
double relative_entropy(const FrameDistribution& p, const FrameDistribution& q);

// Angular marginal of a planar frame density P(mu, nu):
//   P(theta) = int |r| P(r cos theta, r sin theta) dr,  r over all reals,
// so theta in [0, pi) covers the plane twice (once per sign of r).  The
// planar density rides in a PhaseSpaceField with axes read as (mu, nu).
FrameDistribution polar_projection(const PhaseSpaceField& planar,
                                   int n_theta = 256);

}  // namespace tomokit

#endif
