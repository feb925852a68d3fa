#ifndef TOMOKIT_TOMOGRAPHY_HPP
#define TOMOKIT_TOMOGRAPHY_HPP

#include <optional>
#include <vector>

#include "tomokit/grid.hpp"
#include "tomokit/tomogram.hpp"

namespace tomokit {

// Forward symplectic tomography map,
//   w(x; mu, nu) = int f(q, p) delta(x - mu q - nu p) dq dp,
// evaluated per frame by the Fourier-slice route: the row spectrum
// w^(k) equals the field transform along the line k (mu, nu), which is
// sampled exactly at the row's conjugate frequencies with a chirp-Z
// transform and inverted by a 1-D FFT.  Rows are computed on a 2x-extended
// window internally; if more than 1e-3 of the mass lands outside the
// requested x range the frame is rejected as clipped.
Tomogram forward_tomogram(const PhaseSpaceField& field,
                          const std::vector<Frame>& frames, const XGrid& x);

// Same transform but skipping the probability-invariant check on the
// output; used when projecting reconstructed fields whose small ringing is
// clamped by the caller.
Tomogram forward_tomogram_tolerant(const PhaseSpaceField& field,
                                   const std::vector<Frame>& frames,
                                   const XGrid& x);

// Rotation-only (Radon) specialization: frames (cos theta, sin theta).
Tomogram radon_tomogram(const PhaseSpaceField& field,
                        const std::vector<double>& angles, const XGrid& x);

// Uniform angle set theta_a = a*pi/count, a < count.
std::vector<double> uniform_angles(int count);

struct InverseOptions {
  bool hann_apodization = true;  // soften the |k| ramp at the Nyquist edge
  FieldKind target_kind = FieldKind::Wigner;
};

struct InverseResult {
  PhaseSpaceField field;
  double raw_mass = 0.0;        // back-projected mass before renormalization
  double renorm_factor = 1.0;   // applied so the output has unit mass
  double clamped_mass = 0.0;    // negative mass removed (classical targets)
  double min_value = 0.0;       // reconstruction floor before clamping
};

// Filtered back-projection inverse of the rotation-only map.  Requires
// canonical frames; fewer than 8 distinct angles is an error.  The output
// field is renormalized to unit mass and the factor reported.
InverseResult inverse_tomogram(const Tomogram& tomogram,
                               const PhaseSpaceGrid& grid,
                               const InverseOptions& options = {});

// Convenience overload reconstructing on the square grid implied by the
// tomogram's x range.
InverseResult inverse_tomogram(const Tomogram& tomogram,
                               const InverseOptions& options = {});

// Homogeneity of the tomography kernel: the row at (s mu, s nu) is
// |s|^-1 w(x/s; mu, nu), resampled on the same x grid.
std::vector<double> homogeneity_rescale(const XGrid& x,
                                        std::span<const double> row, double s);

// Replaces every frame by its canonical (unit-circle) representative,
// rescaling rows accordingly.
Tomogram canonicalize_tomogram(const Tomogram& tomogram);

struct CatTomogramRow {
  std::vector<double> values;  // renormalized to unit mass
  double raw_mass = 0.0;       // mass of the closed form as printed
};

// Closed-form tomogram row of the odd two-component cat state at angle
// theta.  The printed closed form is shape-exact but carries a separation-
// dependent normalization, so the row is renormalized and the raw mass
// reported.  Errors out for q0^2 + p0^2 < 0.5 where the form degenerates.
CatTomogramRow cat_tomogram_closed_form(const XGrid& x, double theta,
                                        double q0, double p0);

}  // namespace tomokit

#endif
