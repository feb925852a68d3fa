#include "tomokit/entanglement.hpp"

#include <cmath>
#include <string>

#include "tomokit/tomography.hpp"

namespace tomokit {

void DispersionMatrix::validate() const {
  if (modes < 1 || modes > 4)
    throw ValidationError("dispersion matrix supports 1 to 4 modes");
  if (v.rows() != 2 * modes || v.cols() != 2 * modes)
    throw ValidationError("dispersion matrix must be 2N x 2N");
  if (!v.allFinite())
    throw ValidationError("dispersion matrix has non-finite moments");
  if ((v - v.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw ValidationError("dispersion matrix is not symmetric within 1e-10");
}

Eigen::MatrixXd DispersionMatrix::symplectic_form() const {
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
  for (int m = 0; m < modes; ++m) {
    r(2 * m, 2 * m + 1) = 1.0;
    r(2 * m + 1, 2 * m) = -1.0;
  }
  return r;
}

Eigen::MatrixXcd DispersionMatrix::uncertainty_matrix(double hbar) const {
  Eigen::MatrixXcd c = v.cast<std::complex<double>>();
  c += std::complex<double>(0.0, 0.5 * hbar) *
       symplectic_form().cast<std::complex<double>>();
  return c;
}

Eigen::MatrixXd block_to_interleaved_permutation(int modes) {
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
  // block index j < N is q_j -> interleaved 2j; j >= N is p_{j-N} -> 2(j-N)+1
  for (int j = 0; j < modes; ++j) {
    p(2 * j, j) = 1.0;
    p(2 * j + 1, modes + j) = 1.0;
  }
  return p;
}

namespace {

struct RowStats {
  double mean = 0.0;
  double var = 0.0;
};

RowStats row_stats(const TomogramMomentProvider::Row& row) {
  double mass = 0.0, mean = 0.0;
  for (int l = 0; l < row.x.n_x; ++l) {
    mass += row.w[l];
    mean += row.x.x(l) * row.w[l];
  }
  mass *= row.x.dx();
  mean *= row.x.dx();
  if (!(mass > 0.0) || !std::isfinite(mass))
    throw NumericalError("moment row has vanishing or non-finite mass");
  mean /= mass;
  double var = 0.0;
  for (int l = 0; l < row.x.n_x; ++l) {
    double d = row.x.x(l) - mean;
    var += d * d * row.w[l];
  }
  var = var * row.x.dx() / mass;
  if (!std::isfinite(var) || var < 0.0)
    throw NumericalError("moment row produced an invalid variance");
  return {mean, var};
}

double joint_covariance(const TomogramMomentProvider::Joint& joint) {
  double mass = 0.0, ma = 0.0, mb = 0.0;
  for (int a = 0; a < joint.xa.n_x; ++a)
    for (int b = 0; b < joint.xb.n_x; ++b) {
      double w = joint.w[static_cast<std::size_t>(a) * joint.xb.n_x + b];
      mass += w;
      ma += joint.xa.x(a) * w;
      mb += joint.xb.x(b) * w;
    }
  double cell = joint.xa.dx() * joint.xb.dx();
  mass *= cell;
  if (!(mass > 0.0) || !std::isfinite(mass))
    throw NumericalError("joint moment grid has vanishing mass");
  ma = ma * cell / mass;
  mb = mb * cell / mass;
  double cov = 0.0;
  for (int a = 0; a < joint.xa.n_x; ++a)
    for (int b = 0; b < joint.xb.n_x; ++b)
      cov += (joint.xa.x(a) - ma) * (joint.xb.x(b) - mb) *
             joint.w[static_cast<std::size_t>(a) * joint.xb.n_x + b];
  cov = cov * cell / mass;
  if (!std::isfinite(cov))
    throw NumericalError("joint moment grid produced a non-finite covariance");
  return cov;
}

}  // namespace

ProductStateProvider::ProductStateProvider(std::vector<PhaseSpaceField> fields,
                                           XGrid x)
    : fields_(std::move(fields)), x_(x) {
  if (fields_.empty())
    throw ValidationError("product-state provider needs at least one mode");
  x_.validate();
}

int ProductStateProvider::mode_count() const {
  return static_cast<int>(fields_.size());
}

TomogramMomentProvider::Row ProductStateProvider::single_row(
    int mode, const Frame& frame) const {
  if (mode < 0 || mode >= mode_count())
    throw ValidationError("product-state provider: mode out of range");
  Tomogram t = forward_tomogram(fields_[mode], {frame}, x_);
  auto row = t.row(0);
  return Row{x_, {row.begin(), row.end()}};
}

TomogramMomentProvider::Joint ProductStateProvider::joint(
    int mode_a, const Frame& frame_a, int mode_b, const Frame& frame_b) const {
  Row ra = single_row(mode_a, frame_a);
  Row rb = single_row(mode_b, frame_b);
  Joint j;
  j.xa = ra.x;
  j.xb = rb.x;
  j.w.resize(static_cast<std::size_t>(ra.x.n_x) * rb.x.n_x);
  for (int a = 0; a < ra.x.n_x; ++a)
    for (int b = 0; b < rb.x.n_x; ++b)
      j.w[static_cast<std::size_t>(a) * rb.x.n_x + b] = ra.w[a] * rb.w[b];
  return j;
}

MultimodeTomogramMoments dispersion_from_tomograms(
    const TomogramMomentProvider& provider) {
  int n = provider.mode_count();
  if (n < 1 || n > 4)
    throw ValidationError("dispersion_from_tomograms supports 1 to 4 modes");

  const Frame kQ{1.0, 0.0}, kP{0.0, 1.0}, kQP{1.0, 1.0};

  MultimodeTomogramMoments out;
  out.modes = n;
  out.mean_q.resize(n);
  out.mean_p.resize(n);

  // Block ordering first: rows/cols (q_1..q_N, p_1..p_N).
  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    RowStats q = row_stats(provider.single_row(j, kQ));
    RowStats p = row_stats(provider.single_row(j, kP));
    RowStats qp = row_stats(provider.single_row(j, kQP));
    out.mean_q[j] = q.mean;
    out.mean_p[j] = p.mean;
    block(j, j) = q.var;
    block(n + j, n + j) = p.var;
    // Var(q + p) = Var q + Var p + 2 Cov(q, p)
    double cov = 0.5 * (qp.var - q.var - p.var);
    block(j, n + j) = cov;
    block(n + j, j) = cov;
  }
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      double qq = joint_covariance(provider.joint(j, kQ, k, kQ));
      double pp = joint_covariance(provider.joint(j, kP, k, kP));
      double qp = joint_covariance(provider.joint(j, kQ, k, kP));
      double pq = joint_covariance(provider.joint(j, kP, k, kQ));
      block(j, k) = block(k, j) = qq;
      block(n + j, n + k) = block(n + k, n + j) = pp;
      block(j, n + k) = block(n + k, j) = qp;
      block(n + j, k) = block(k, n + j) = pq;
    }

  Eigen::MatrixXd perm = block_to_interleaved_permutation(n);
  out.dispersion.v = perm * block * perm.transpose();
  out.dispersion.modes = n;
  out.dispersion.validate();
  return out;
}

UncertaintyVerdict uncertainty_check(const Eigen::MatrixXd& v,
                                     const Eigen::MatrixXd& r, double hbar) {
  if (v.rows() != v.cols() || v.rows() % 2 != 0)
    throw ValidationError("uncertainty_check: V must be 2N x 2N");
  if ((v - v.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw ValidationError("uncertainty_check: V is not symmetric");
  if (r.rows() != v.rows() || r.cols() != v.cols())
    throw ValidationError("uncertainty_check: R shape mismatch");
  Eigen::MatrixXcd c = v.cast<std::complex<double>>() +
                       std::complex<double>(0.0, 0.5 * hbar) *
                           r.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(c);
  double min_eig = solver.eigenvalues().minCoeff();
  return UncertaintyVerdict{min_eig >= -1e-10, min_eig};
}

UncertaintyVerdict uncertainty_check(const DispersionMatrix& v, double hbar) {
  v.validate();
  return uncertainty_check(v.v, v.symplectic_form(), hbar);
}

void ScalingVector::validate() const {
  if (lambda.empty() || lambda.size() % 2 != 0)
    throw ValidationError("scaling vector must have 2N entries");
  for (double l : lambda)
    if (!std::isfinite(l) || l == 0.0)
      throw ValidationError("scaling vector entries must be finite and nonzero");
  for (std::size_t k = 0; k + 1 < lambda.size(); k += 2)
    if (std::abs(lambda[k] * lambda[k + 1]) < 1.0 - 1e-12)
      throw ValidationError(
          "scaling vector violates the semigroup constraint "
          "|lambda_(2k-1) lambda_(2k)| >= 1");
}

DispersionMatrix partial_scaling(const DispersionMatrix& v,
                                 const ScalingVector& lambda) {
  v.validate();
  lambda.validate();
  if (static_cast<int>(lambda.lambda.size()) != 2 * v.modes)
    throw ValidationError("scaling vector length must be 2N");
  Eigen::VectorXd d(2 * v.modes);
  for (int i = 0; i < 2 * v.modes; ++i) d(i) = lambda.lambda[i];
  DispersionMatrix out;
  out.modes = v.modes;
  out.v = d.asDiagonal() * v.v * d.asDiagonal();
  return out;
}

std::vector<ScalingVector> LambdaSweep::vectors(int modes) const {
  if (count < 1) throw ValidationError("lambda sweep needs count >= 1");
  if (!(lambda_min > 0.0) || !(lambda_max >= lambda_min))
    throw ValidationError("lambda sweep needs 0 < lambda_min <= lambda_max");
  std::vector<ScalingVector> out;
  double log_lo = std::log(lambda_min), log_hi = std::log(lambda_max);
  for (int i = 0; i < count; ++i) {
    double frac = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    double lambda = std::exp(log_lo + frac * (log_hi - log_lo));
    double last = 1.0 / lambda;
    if (std::abs(last) < 1.0 - 1e-12) continue;  // outside the semigroup
    ScalingVector v;
    v.lambda.assign(2 * modes, 1.0);
    v.lambda.back() = last;
    out.push_back(v);
    if (include_negative) {
      v.lambda.back() = -last;
      out.push_back(v);
    }
  }
  return out;
}

SeparabilityVerdict separability_test(const DispersionMatrix& v,
                                      const std::vector<ScalingVector>& sweep,
                                      double hbar) {
  v.validate();
  UncertaintyVerdict base = uncertainty_check(v, hbar);
  SeparabilityVerdict verdict;
  verdict.min_eigenvalue = base.min_eigenvalue;
  if (!base.pass) {
    verdict.outcome = SeparabilityOutcome::InvalidState;
    return verdict;
  }
  for (const auto& lam : sweep) {
    DispersionMatrix scaled = partial_scaling(v, lam);
    UncertaintyVerdict u = uncertainty_check(scaled, hbar);
    ++verdict.tested;
    if (u.min_eigenvalue < verdict.min_eigenvalue)
      verdict.min_eigenvalue = u.min_eigenvalue;
    if (!u.pass) {
      verdict.outcome = SeparabilityOutcome::Entangled;
      verdict.witness = lam;
      return verdict;
    }
  }
  verdict.outcome = SeparabilityOutcome::SeparableConsistent;
  return verdict;
}

SeparabilityVerdict separability_test(const DispersionMatrix& v,
                                      const LambdaSweep& sweep, double hbar) {
  return separability_test(v, sweep.vectors(v.modes), hbar);
}

}  // namespace tomokit
