#include "tomokit/states.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "tomokit/fft.hpp"

namespace tomokit {

namespace {

// Renormalizes sampled values to unit mass; errors out when the raw mass is
// so far off that the state clearly does not fit the grid.
std::vector<double> normalized_or_throw(const PhaseSpaceGrid& grid,
                                        std::vector<double> values,
                                        const char* what) {
  double mass = 0.0;
  for (double v : values) mass += v;
  mass *= grid.dq() * grid.dp();
  if (!(mass > 0.0) || std::abs(mass - 1.0) > 2e-2)
    throw ValidationError(std::string(what) +
                          ": state mass on the grid is " +
                          std::to_string(mass) +
                          "; grid too narrow for the requested state");
  for (double& v : values) v /= mass;
  return values;
}

}  // namespace

PhaseSpaceField make_gaussian(const PhaseSpaceGrid& grid, double q0, double p0,
                              double sigma_q, double sigma_p, double corr) {
  grid.validate();
  if (!(sigma_q > 0.0) || !(sigma_p > 0.0))
    throw ValidationError("make_gaussian: sigma_q and sigma_p must be > 0");
  if (!(std::abs(corr) < 1.0))
    throw ValidationError("make_gaussian: |corr| must be < 1");
  // the 6-sigma box (q0 +- 3 sigma_q) x (p0 +- 3 sigma_p) must fit
  if (q0 - 3.0 * sigma_q < grid.q_min || q0 + 3.0 * sigma_q > grid.q_max ||
      p0 - 3.0 * sigma_p < grid.p_min || p0 + 3.0 * sigma_p > grid.p_max)
    throw ValidationError("make_gaussian: 6-sigma box exceeds the grid");

  double det = 1.0 - corr * corr;
  double norm = 1.0 / (2.0 * kPi * sigma_q * sigma_p * std::sqrt(det));
  std::vector<double> values(grid.size());
  for (int i = 0; i < grid.n_q; ++i) {
    double u = (grid.q(i) - q0) / sigma_q;
    for (int j = 0; j < grid.n_p; ++j) {
      double v = (grid.p(j) - p0) / sigma_p;
      double e = (u * u - 2.0 * corr * u * v + v * v) / (2.0 * det);
      values[static_cast<std::size_t>(i) * grid.n_p + j] = norm * std::exp(-e);
    }
  }
  values = normalized_or_throw(grid, std::move(values), "make_gaussian");
  FieldKind kind = sigma_q * sigma_p * std::sqrt(det) >= 0.5 - 1e-12
                       ? FieldKind::Wigner
                       : FieldKind::Classical;
  return PhaseSpaceField::checked(grid, kind, std::move(values));
}

PhaseSpaceField make_vacuum(const PhaseSpaceGrid& grid) {
  double s = 1.0 / std::sqrt(2.0);
  return make_gaussian(grid, 0.0, 0.0, s, s, 0.0);
}

PhaseSpaceField make_delta_approx(const PhaseSpaceGrid& grid, double q0,
                                  double p0, double eps) {
  grid.validate();
  if (!(eps > 0.0)) throw ValidationError("make_delta_approx: eps must be > 0");
  double coarse = std::max(grid.dq(), grid.dp());
  if (eps < 3.0 * coarse)
    throw ValidationError(
        "make_delta_approx: eps = " + std::to_string(eps) +
        " is not resolvable; need eps >= 3*max(dq, dp) = " +
        std::to_string(3.0 * coarse));
  return make_gaussian(grid, q0, p0, eps, eps, 0.0);
}

PhaseSpaceField make_cat_wigner(const PhaseSpaceGrid& grid, double q0,
                                double p0) {
  grid.validate();
  double sep = std::abs(q0) + 6.0;
  double sep_p = std::abs(p0) + 6.0;
  if (grid.q_min > -sep || grid.q_max < sep || grid.p_min > -sep_p ||
      grid.p_max < sep_p)
    throw ValidationError("make_cat_wigner: grid too narrow for the cat state");

  // Odd superposition of coherent states at +-(q0, p0).  Unnormalized norm
  // squared is 2(1 - exp(-(q0^2 + p0^2))), which vanishes as the components
  // merge; flag that regime instead of dividing by noise.
  double r2 = q0 * q0 + p0 * p0;
  double norm2 = 2.0 * (1.0 - std::exp(-r2));
  if (norm2 < 1e-5)
    throw ValidationError(
        "make_cat_wigner: components at +-(q0, p0) are too close; the odd "
        "superposition norm vanishes");
  double amp = 1.0 / std::sqrt(norm2);

  // psi(xi) = amp * (<xi|alpha> - <xi|-alpha>), alpha = (q0 + i p0)/sqrt(2).
  auto psi = [&](double xi) -> cplx {
    double base = std::pow(kPi, -0.25);
    cplx plus = std::polar(base * std::exp(-0.5 * (xi - q0) * (xi - q0)),
                           p0 * (xi - 0.5 * q0));
    cplx minus = std::polar(base * std::exp(-0.5 * (xi + q0) * (xi + q0)),
                            -p0 * (xi - 0.5 * q0) - p0 * q0);
    return amp * (plus - minus);
  };

  // W(q, p) = (1/2pi) int psi*(q + y/2) psi(q - y/2) e^{i p y} dy, evaluated
  // for every p at once by an FFT over y.  The y grid is matched to the p
  // grid (dy * dp = 2pi/M) so DFT bins land exactly on the p samples.
  int oversample = 4;
  int m_samples = next_fast_fft_size(grid.n_p * oversample);
  double dy = 2.0 * kPi / (m_samples * grid.dp());
  double y0 = -0.5 * m_samples * dy;

  std::vector<double> values(grid.size());
  std::vector<cplx> g(m_samples), spec(m_samples);
  for (int i = 0; i < grid.n_q; ++i) {
    double q = grid.q(i);
    for (int m = 0; m < m_samples; ++m) {
      double y = y0 + m * dy;
      g[m] = std::conj(psi(q + 0.5 * y)) * psi(q - 0.5 * y) *
             std::polar(1.0, grid.p_min * m * dy);
    }
    // W(q, p_j) = (dy/2pi) e^{i p_j y0} sum_m g_m e^{2pi i j m / M}
    fft_backward(g.data(), spec.data(), m_samples);
    for (int j = 0; j < grid.n_p; ++j) {
      cplx w = spec[j] * std::polar(dy / (2.0 * kPi), grid.p(j) * y0);
      values[static_cast<std::size_t>(i) * grid.n_p + j] = w.real();
    }
  }

  double raw = 0.0;
  for (double v : values) raw += v;
  raw *= grid.dq() * grid.dp();
  if (std::abs(raw - 1.0) > 1e-5)
    throw NumericalError("make_cat_wigner: Wigner mass " + std::to_string(raw) +
                         " deviates from 1; grid does not hold the state");
  for (double& v : values) v /= raw;
  return PhaseSpaceField::checked(grid, FieldKind::Wigner, std::move(values));
}

double integrate(const PhaseSpaceField& field) { return field.mass(); }

std::vector<double> position_marginal(const PhaseSpaceField& field) {
  const auto& g = field.grid();
  std::vector<double> out(g.n_q, 0.0);
  for (int i = 0; i < g.n_q; ++i) {
    double s = 0.0;
    for (int j = 0; j < g.n_p; ++j) s += field.at(i, j);
    out[i] = s * g.dp();
  }
  return out;
}

std::vector<double> momentum_marginal(const PhaseSpaceField& field) {
  const auto& g = field.grid();
  std::vector<double> out(g.n_p, 0.0);
  for (int j = 0; j < g.n_p; ++j) {
    double s = 0.0;
    for (int i = 0; i < g.n_q; ++i) s += field.at(i, j);
    out[j] = s * g.dq();
  }
  return out;
}

}  // namespace tomokit
