#ifndef TOMOKIT_ENTANGLEMENT_HPP
#define TOMOKIT_ENTANGLEMENT_HPP

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "tomokit/frame.hpp"
#include "tomokit/grid.hpp"
#include "tomokit/tomogram.hpp"

namespace tomokit {

// Second-moment (dispersion) matrix of an N-mode state in the interleaved
// ordering (q1, p1, ..., qN, pN), for which the symplectic form is exactly
// diag(S, ..., S) with S = [[0, 1], [-1, 0]].
struct DispersionMatrix {
  Eigen::MatrixXd v;  // 2N x 2N, symmetric
  int modes = 0;

  void validate() const;
  Eigen::MatrixXd symplectic_form() const;  // R
  // C = V + (i hbar / 2) R
  Eigen::MatrixXcd uncertainty_matrix(double hbar = 1.0) const;
};

// Permutation taking the block ordering (q1..qN, p1..pN) used while filling
// the matrix from tomographic moments into the interleaved ordering.
Eigen::MatrixXd block_to_interleaved_permutation(int modes);

// Mean and central second moments read from tomogram rows by quadrature.
struct MultimodeTomogramMoments {
  int modes = 0;
  std::vector<double> mean_q, mean_p;  // per mode
  DispersionMatrix dispersion;
};

// Supplies the tomographic marginals the moment construction needs: 1-D
// rows per mode for single-mode frames and the 2-D joint density of two
// distinct modes' quadratures.
class TomogramMomentProvider {
 public:
  virtual ~TomogramMomentProvider() = default;
  virtual int mode_count() const = 0;

  struct Row {
    XGrid x;
    std::vector<double> w;
  };
  virtual Row single_row(int mode, const Frame& frame) const = 0;

  struct Joint {
    XGrid xa, xb;
    std::vector<double> w;  // row-major, first mode outer
  };
  virtual Joint joint(int mode_a, const Frame& frame_a, int mode_b,
                      const Frame& frame_b) const = 0;
};

// Product of independent single-mode fields; joints factorize into outer
// products of forward-tomogram rows.
class ProductStateProvider : public TomogramMomentProvider {
 public:
  ProductStateProvider(std::vector<PhaseSpaceField> fields, XGrid x);
  int mode_count() const override;
  Row single_row(int mode, const Frame& frame) const override;
  Joint joint(int mode_a, const Frame& frame_a, int mode_b,
              const Frame& frame_b) const override;

 private:
  std::vector<PhaseSpaceField> fields_;
  XGrid x_;
};

// Builds the dispersion matrix from tomographic moments: diagonal blocks
// from single-mode rows at the frames (1,0), (0,1) and (1,1) (the last via
// the polarization identity for the q-p covariance), off-diagonal blocks
// from two-mode joints.  Filled in the block ordering, then permuted once
// into the interleaved ordering.  Modes are capped at 4.
MultimodeTomogramMoments dispersion_from_tomograms(
    const TomogramMomentProvider& provider);

struct UncertaintyVerdict {
  bool pass = false;
  double min_eigenvalue = 0.0;
};

// Robertson-Schroedinger check: C = V + (i hbar/2) R >= 0, passing when the
// smallest eigenvalue is >= -1e-10.
UncertaintyVerdict uncertainty_check(const DispersionMatrix& v,
                                     double hbar = 1.0);
// Same check against an explicit symplectic form (any consistent ordering).
UncertaintyVerdict uncertainty_check(const Eigen::MatrixXd& v,
                                     const Eigen::MatrixXd& r,
                                     double hbar = 1.0);

// Scaling semigroup element: 2N nonzero entries with |l_{2k-1} l_{2k}| >= 1
// per mode pair.
struct ScalingVector {
  std::vector<double> lambda;
  void validate() const;
};

// Non-canonical congruence V -> D V D, D = diag(lambda).
DispersionMatrix partial_scaling(const DispersionMatrix& v,
                                 const ScalingVector& lambda);

enum class SeparabilityOutcome {
  SeparableConsistent,  // necessary condition held over the whole sweep
  Entangled,            // some allowed scaling broke positivity
  InvalidState,         // input failed the plain uncertainty check
};

struct SeparabilityVerdict {
  SeparabilityOutcome outcome = SeparabilityOutcome::SeparableConsistent;
  std::optional<ScalingVector> witness;
  double min_eigenvalue = 0.0;  // most negative eigenvalue seen in the sweep
  int tested = 0;               // scaling vectors actually tested
};

struct LambdaSweep {
  double lambda_min = 1e-2;
  double lambda_max = 1e2;
  int count = 201;            // log-spaced lambda grid
  bool include_negative = true;  // also test the sign-flipped scalings

  // Scaling vectors (1, ..., 1, 1/lambda) over the grid, restricted to the
  // semigroup (|1/lambda| >= 1); with include_negative the mirrored
  // (1, ..., 1, -1/lambda) vectors are added, covering partial transpose.
  std::vector<ScalingVector> vectors(int modes) const;
};

// Partial-scaling separability test: necessary condition C^lambda >= 0 over
// the sweep.  A verdict of Entangled carries the first witness found.
SeparabilityVerdict separability_test(const DispersionMatrix& v,
                                      const LambdaSweep& sweep = {},
                                      double hbar = 1.0);
SeparabilityVerdict separability_test(const DispersionMatrix& v,
                                      const std::vector<ScalingVector>& sweep,
                                      double hbar = 1.0);

}  // namespace tomokit

#endif
