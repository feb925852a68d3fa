#ifndef TOMOKIT_DYNAMICS_HPP
#define TOMOKIT_DYNAMICS_HPP

#include <functional>
#include <vector>

#include "tomokit/grid.hpp"
#include "tomokit/tomogram.hpp"

namespace tomokit {

// Polynomial potential U(q) = sum_k c_k q^k, degree <= 6.  The odd
// derivative series driving the quantum correction terminates for
// polynomials, which is what makes the quantum transport exact here.
class Potential {
 public:
  Potential() : coeffs_{0.0} {}
  explicit Potential(std::vector<double> coeffs);

  static Potential free_motion() { return Potential(); }
  static Potential harmonic(double omega2 = 1.0) {
    return Potential({0.0, 0.0, 0.5 * omega2});
  }

  const std::vector<double>& coeffs() const { return coeffs_; }
  double coeff(int k) const {
    return k < static_cast<int>(coeffs_.size()) ? coeffs_[k] : 0.0;
  }
  int degree() const;
  double value(double q) const;
  // Evaluates the order-th derivative of U at q.
  double derivative(int order, double q) const;
  // Correction orders n >= 1 with a nonvanishing U^(2n+1); empty for
  // quadratic potentials, where classical and quantum transport coincide.
  std::vector<int> moyal_orders() const;

 private:
  std::vector<double> coeffs_;
};

enum class EvolutionMode { Classical, Quantum };

struct EvolutionSpec {
  double t_final = 0.0;
  double dt = 0.0;  // 0 = automatic (capped by the advective bound)
  double hbar = 1.0;
  EvolutionMode mode = EvolutionMode::Classical;

  void validate() const;
};

// 0.5 * min(dq/|p|_max, dp/|U'|_max) over the grid extent; user-supplied
// steps larger than this are rejected.
double advective_dt_bound(const PhaseSpaceGrid& grid, const Potential& U);

struct EvolveResult {
  PhaseSpaceField field;
  double mass_drift = 0.0;    // |mass(t_final) - mass(0)|
  double clamped_mass = 0.0;  // negative mass removed for classical kind
  double min_value = 0.0;     // floor before clamping
  long steps = 0;
};

// Propagates a field through dU/dq forcing and free streaming with a
// Strang-split spectral scheme on a zero-padded copy of the grid (25%
// enlargement).  Both substeps are exact phase multiplications:
//   drift:  f^(k, p)      *= exp(-i k p dt)
//   kick:   f~(q, lambda) *= exp(+i dt sum_n U^(2n+1)(q) lambda^(2n+1)
//                                       (hbar/2)^(2n) / (2n+1)!)
// Classical mode keeps only the n = 0 term; quantum mode keeps the full
// terminating series (and requires a Wigner-kind field).  Mass reaching the
// pad band, mass drift beyond 1e-3, or value blow-up raise a numerical
// error.
EvolveResult evolve_field(const PhaseSpaceField& field, const Potential& U,
                          const EvolutionSpec& spec);

// Same propagation with snapshots at the requested times (ascending,
// within [0, t_final]); the callback also fires at t_final.
EvolveResult evolve_field_checkpoints(
    const PhaseSpaceField& field, const Potential& U, const EvolutionSpec& spec,
    const std::vector<double>& checkpoint_times,
    const std::function<void(double, const PhaseSpaceField&)>& on_checkpoint);

// Affine phase-space flow z(t) = M z(0) + b for quadratic potentials.
struct AffineFlow {
  double m00 = 1.0, m01 = 0.0, m10 = 0.0, m11 = 1.0;
  double b0 = 0.0, b1 = 0.0;
};
AffineFlow quadratic_flow(const Potential& U, double t);

// Tomogram evolution.  For degree <= 2 the transport is exact: each row is
// carried unchanged (up to an x translation from any linear force term) to
// the frame obtained by pulling the original frame back through the inverse
// transpose of the flow; no angular resampling occurs.  For degree > 2 the
// tomogram is inverted to a field, propagated with evolve_field, and
// re-projected onto the original frames (canonical frames required).
Tomogram evolve_tomogram(const Tomogram& tomogram, const Potential& U,
                         const EvolutionSpec& spec);

// Closed-form free-motion row: the eps-smoothed
// delta(x - mu(q0 + t p0) - nu p0), whose width is eps*hypot(mu, nu + t*mu).
std::vector<double> free_tomogram_analytic(const XGrid& x, const Frame& frame,
                                           double q0, double p0, double eps,
                                           double t);

}  // namespace tomokit

#endif
