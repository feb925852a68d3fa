#ifndef TOMOKIT_STATES_HPP
#define TOMOKIT_STATES_HPP

#include <vector>

#include "tomokit/grid.hpp"

namespace tomokit {

// Reference-state factories.  All outputs are renormalized to unit mass on
// the grid and validated against the field invariants.

// Bivariate Gaussian centered at (q0, p0) with standard deviations
// (sigma_q, sigma_p) and correlation corr.  Classified as a Wigner function
// when sigma_q*sigma_p*sqrt(1-corr^2) >= 1/2, classical otherwise.
PhaseSpaceField make_gaussian(const PhaseSpaceGrid& grid, double q0, double p0,
                              double sigma_q, double sigma_p,
                              double corr = 0.0);

// Vacuum Wigner function W(q,p) = (1/pi) exp(-q^2 - p^2).
PhaseSpaceField make_vacuum(const PhaseSpaceGrid& grid);

// Narrow isotropic Gaussian of width eps standing in for
// delta(q - q0) delta(p - p0).  Requires eps >= 3*max(dq, dp).
PhaseSpaceField make_delta_approx(const PhaseSpaceGrid& grid, double q0,
                                  double p0, double eps);

// Wigner function of the odd superposition of coherent states at
// +-(q0, p0), computed from the position wavefunction by the Wigner
// integral (FFT over the separation variable).  Errors out near the
// degenerate point q0 = p0 = 0 where the superposition norm vanishes.
PhaseSpaceField make_cat_wigner(const PhaseSpaceGrid& grid, double q0,
                                double p0);

// Quadrature and marginals (rectangle rule on the uniform grid).
double integrate(const PhaseSpaceField& field);
std::vector<double> position_marginal(const PhaseSpaceField& field);
std::vector<double> momentum_marginal(const PhaseSpaceField& field);

}  // namespace tomokit

#endif
