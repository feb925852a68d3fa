#include "tomokit/information.hpp"

#include <cmath>
#include <string>

namespace tomokit {

FrameDistribution FrameDistribution::uniform(int n_theta) {
  if (n_theta < 2)
    throw ValidationError("frame distribution needs at least 2 samples");
  FrameDistribution d;
  d.p_.assign(n_theta, 1.0 / kPi);
  return d;
}

FrameDistribution FrameDistribution::from_samples(std::vector<double> density) {
  if (density.size() < 2)
    throw ValidationError("frame distribution needs at least 2 samples");
  FrameDistribution d;
  d.p_ = std::move(density);
  for (double v : d.p_) {
    if (!std::isfinite(v))
      throw ValidationError("frame distribution has non-finite density");
    if (v < 0.0)
      throw ValidationError("frame distribution has negative density");
  }
  if (std::abs(d.mass() - 1.0) > 1e-6)
    throw ValidationError("frame distribution mass = " +
                          std::to_string(d.mass()) + ", expected 1 within 1e-6");
  return d;
}

FrameDistribution FrameDistribution::normalized(std::vector<double> density) {
  double mass = 0.0;
  for (double v : density) {
    if (!std::isfinite(v) || v < 0.0)
      throw ValidationError("frame density must be finite and nonnegative");
    mass += v;
  }
  mass *= kPi / density.size();
  if (!(mass > 0.0))
    throw ValidationError("frame density has no mass to normalize");
  for (double& v : density) v /= mass;
  return from_samples(std::move(density));
}

double FrameDistribution::mass() const {
  double s = 0.0;
  for (double v : p_) s += v;
  return s * dtheta();
}

double relative_entropy(const FrameDistribution& p,
                        const FrameDistribution& q) {
  if (p.size() != q.size())
    throw ValidationError("relative_entropy requires a common angle grid");
  double h = 0.0;
  for (int k = 0; k < p.size(); ++k) {
    double pk = p.density()[k], qk = q.density()[k];
    if (pk <= 0.0) continue;  // 0 log 0 := 0
    if (qk <= 0.0) {
      if (pk > 1e-12)
        throw ValidationError(
            "relative_entropy: P has support where Q vanishes");
      continue;
    }
    h += pk * std::log(pk / qk);
  }
  return h * p.dtheta();
}

FrameDistribution polar_projection(const PhaseSpaceField& planar,
                                   int n_theta) {
  if (n_theta < 2)
    throw ValidationError("polar_projection needs at least 2 angles");
  if (planar.min_value() < -1e-12)
    throw ValidationError("polar_projection requires a nonnegative density");
  double grid_mass = planar.mass();
  if (std::abs(grid_mass - 1.0) > 1e-3)
    throw ValidationError(
        "polar_projection: planar mass on the grid is " +
        std::to_string(grid_mass) +
        "; more than 1e-3 of the density lies outside the grid");

  const auto& g = planar.grid();
  // bilinear sample of the planar density, zero outside the grid
  auto sample = [&](double mu, double nu) -> double {
    double fi = (mu - g.q_min) / g.dq();
    double fj = (nu - g.p_min) / g.dp();
    if (fi < 0.0 || fj < 0.0 || fi > g.n_q - 1 || fj > g.n_p - 1) return 0.0;
    int i = std::min(static_cast<int>(fi), g.n_q - 2);
    int j = std::min(static_cast<int>(fj), g.n_p - 2);
    double a = fi - i, b = fj - j;
    return planar.at(i, j) * (1 - a) * (1 - b) +
           planar.at(i + 1, j) * a * (1 - b) +
           planar.at(i, j + 1) * (1 - a) * b + planar.at(i + 1, j + 1) * a * b;
  };

  double r_max = std::hypot(std::max(std::abs(g.q_min), std::abs(g.q_max)),
                            std::max(std::abs(g.p_min), std::abs(g.p_max)));
  double dr = 0.5 * std::min(g.dq(), g.dp());
  int n_r = static_cast<int>(std::ceil(r_max / dr));

  std::vector<double> density(n_theta, 0.0);
  for (int k = 0; k < n_theta; ++k) {
    double theta = (k + 0.5) * kPi / n_theta;
    double c = std::cos(theta), s = std::sin(theta);
    double acc = 0.0;
    for (int m = -n_r; m <= n_r; ++m) {
      double r = m * dr;
      acc += std::abs(r) * sample(r * c, r * s);
    }
    density[k] = acc * dr;
  }
  return FrameDistribution::normalized(std::move(density));
}

}  // namespace tomokit
