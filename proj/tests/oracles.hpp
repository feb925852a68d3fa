// Independent reference implementations used only by tests.  Each one takes
// the slow, obvious route on purpose so it shares no code path with the
// library transforms it cross-checks.
#ifndef TOMOKIT_TESTS_ORACLES_HPP
#define TOMOKIT_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "tomokit/dynamics.hpp"
#include "tomokit/fft.hpp"
#include "tomokit/grid.hpp"

namespace oracles {

using tomokit::cplx;
using tomokit::kPi;
using tomokit::PhaseSpaceField;
using tomokit::PhaseSpaceGrid;
using tomokit::XGrid;

// Bilinear sample of a field, zero outside the grid.
inline double sample_field(const PhaseSpaceField& f, double q, double p) {
  const auto& g = f.grid();
  double fi = (q - g.q_min) / g.dq();
  double fj = (p - g.p_min) / g.dp();
  if (fi < 0 || fj < 0 || fi > g.n_q - 1 || fj > g.n_p - 1) return 0.0;
  int i = std::min(static_cast<int>(fi), g.n_q - 2);
  int j = std::min(static_cast<int>(fj), g.n_p - 2);
  double a = fi - i, b = fj - j;
  return f.at(i, j) * (1 - a) * (1 - b) + f.at(i + 1, j) * a * (1 - b) +
         f.at(i, j + 1) * (1 - a) * b + f.at(i + 1, j + 1) * a * b;
}

// Rotate-and-sum Radon projection: w(x; theta) = int f(x cos - y sin,
// x sin + y cos) dy by direct line sampling.
inline std::vector<double> radon_direct(const PhaseSpaceField& f, double theta,
                                        const XGrid& x) {
  const auto& g = f.grid();
  double c = std::cos(theta), s = std::sin(theta);
  double reach = std::hypot(std::max(std::abs(g.q_min), std::abs(g.q_max)),
                            std::max(std::abs(g.p_min), std::abs(g.p_max)));
  double dy = 0.5 * std::min(g.dq(), g.dp());
  int n_y = static_cast<int>(std::ceil(reach / dy));
  std::vector<double> row(x.n_x, 0.0);
  for (int l = 0; l < x.n_x; ++l) {
    double xv = x.x(l);
    double acc = 0.0;
    for (int m = -n_y; m <= n_y; ++m) {
      double y = m * dy;
      acc += sample_field(f, xv * c - y * s, xv * s + y * c);
    }
    row[l] = acc * dy;
  }
  return row;
}

// Odd cat-state position wavefunction at +-(q0, p0) (normalized).
inline std::function<cplx(double)> cat_psi(double q0, double p0) {
  double norm2 = 2.0 * (1.0 - std::exp(-(q0 * q0 + p0 * p0)));
  double amp = 1.0 / std::sqrt(norm2);
  return [=](double xi) -> cplx {
    double base = std::pow(kPi, -0.25);
    cplx plus = std::polar(base * std::exp(-0.5 * (xi - q0) * (xi - q0)),
                           p0 * (xi - 0.5 * q0));
    cplx minus = std::polar(base * std::exp(-0.5 * (xi + q0) * (xi + q0)),
                            -p0 * (xi + 0.5 * q0));
    return amp * (plus - minus);
  };
}

// Brute-force Wigner transform: trapezoid quadrature of
// (1/2pi) int psi*(q + y/2) psi(q - y/2) e^{i p y} dy at every grid node.
inline std::vector<double> wigner_bruteforce(
    const PhaseSpaceGrid& g, const std::function<cplx(double)>& psi,
    double y_half = 14.0, double dy = 0.02) {
  int n_y = static_cast<int>(std::ceil(y_half / dy));
  std::vector<double> out(g.size());
  std::vector<cplx> left(2 * n_y + 1), right(2 * n_y + 1);
  for (int i = 0; i < g.n_q; ++i) {
    double q = g.q(i);
    for (int m = -n_y; m <= n_y; ++m) {
      left[m + n_y] = std::conj(psi(q + 0.5 * m * dy));
      right[m + n_y] = psi(q - 0.5 * m * dy);
    }
    for (int j = 0; j < g.n_p; ++j) {
      double p = g.p(j);
      cplx acc(0.0, 0.0);
      for (int m = -n_y; m <= n_y; ++m) {
        double w = (m == -n_y || m == n_y) ? 0.5 : 1.0;
        acc += w * left[m + n_y] * right[m + n_y] *
               std::polar(1.0, p * m * dy);
      }
      out[static_cast<std::size_t>(i) * g.n_p + j] =
          (acc * (dy / (2.0 * kPi))).real();
    }
  }
  return out;
}

// Independent transport reference: classical RK4 with 4th-order central
// finite differences on a periodically indexed copy of the grid.  Quantum
// mode adds the terminating odd-derivative correction series.
inline std::vector<double> fd_rk4_evolve(const PhaseSpaceField& field,
                                         const tomokit::Potential& u,
                                         tomokit::EvolutionMode mode,
                                         double hbar, double t_final,
                                         double dt) {
  const auto& g = field.grid();
  const int nq = g.n_q, np = g.n_p;
  std::vector<double> w(field.values());

  auto idx = [&](int i, int j) {
    i = (i % nq + nq) % nq;
    j = (j % np + np) % np;
    return static_cast<std::size_t>(i) * np + j;
  };
  auto dq1 = [&](const std::vector<double>& a, int i, int j) {
    return (a[idx(i - 2, j)] - 8.0 * a[idx(i - 1, j)] + 8.0 * a[idx(i + 1, j)] -
            a[idx(i + 2, j)]) /
           (12.0 * g.dq());
  };
  auto dp1 = [&](const std::vector<double>& a, int i, int j) {
    return (a[idx(i, j - 2)] - 8.0 * a[idx(i, j - 1)] + 8.0 * a[idx(i, j + 1)] -
            a[idx(i, j + 2)]) /
           (12.0 * g.dp());
  };
  auto dp3 = [&](const std::vector<double>& a, int i, int j) {
    // 4th-order 7-point stencil for the third derivative
    return (-a[idx(i, j - 3)] / 8.0 + a[idx(i, j - 2)] -
            13.0 * a[idx(i, j - 1)] / 8.0 + 13.0 * a[idx(i, j + 1)] / 8.0 -
            a[idx(i, j + 2)] + a[idx(i, j + 3)] / 8.0) /
           (g.dp() * g.dp() * g.dp());
  };

  bool quartic_term = mode == tomokit::EvolutionMode::Quantum &&
                      !u.moyal_orders().empty();
  auto rhs = [&](const std::vector<double>& a) {
    std::vector<double> r(a.size());
    for (int i = 0; i < nq; ++i) {
      double q = g.q(i);
      double force = u.derivative(1, q);
      double third = quartic_term ? u.derivative(3, q) : 0.0;
      for (int j = 0; j < np; ++j) {
        double v = -g.p(j) * dq1(a, i, j) + force * dp1(a, i, j);
        if (quartic_term)
          v -= (hbar * hbar / 4.0) * third * dp3(a, i, j) / 6.0;
        r[idx(i, j)] = v;
      }
    }
    return r;
  };

  long steps = std::max<long>(1, static_cast<long>(std::ceil(t_final / dt)));
  double h = t_final / steps;
  std::vector<double> k1, k2, k3, k4, tmp(w.size());
  for (long s = 0; s < steps; ++s) {
    k1 = rhs(w);
    for (std::size_t m = 0; m < w.size(); ++m) tmp[m] = w[m] + 0.5 * h * k1[m];
    k2 = rhs(tmp);
    for (std::size_t m = 0; m < w.size(); ++m) tmp[m] = w[m] + 0.5 * h * k2[m];
    k3 = rhs(tmp);
    for (std::size_t m = 0; m < w.size(); ++m) tmp[m] = w[m] + h * k3[m];
    k4 = rhs(tmp);
    for (std::size_t m = 0; m < w.size(); ++m)
      w[m] += h / 6.0 * (k1[m] + 2.0 * k2[m] + 2.0 * k3[m] + k4[m]);
  }
  return w;
}

// Quantum correction sign check helper: the n = 1 series term for the
// quartic/cubic family, evaluated directly.
inline double moyal_n1_term(const tomokit::Potential& u, double hbar, double q,
                            double lambda) {
  return u.derivative(3, q) * lambda * lambda * lambda * hbar * hbar / 24.0;
}

// Fractional Fourier transform of order theta along a sampled axis,
// implemented as chirp / chirp-Z / chirp.  |result|^2 is the distribution
// of the rotated quadrature cos(theta) q + sin(theta) p.
inline std::vector<cplx> frft(const XGrid& axis, const std::vector<cplx>& in,
                              double theta) {
  int n = axis.n_x;
  // reduce to (0, pi) u {0}; F_{theta+pi} psi(x) = F_theta psi(-x)
  bool reflect = false;
  double th = std::fmod(theta, 2.0 * kPi);
  if (th < 0) th += 2.0 * kPi;
  if (th >= kPi) {
    th -= kPi;
    reflect = true;
  }
  std::vector<cplx> out(n);
  if (th < 1e-12) {
    out = in;
  } else {
    double cot = std::cos(th) / std::sin(th);
    double inv_sin = 1.0 / std::sin(th);
    // C = e^{i th/2} / sqrt(2 pi i sin th)
    cplx c_front = std::polar(1.0, 0.5 * th) /
                   std::sqrt(cplx(0.0, 2.0 * kPi * std::sin(th)));
    std::vector<cplx> chirped(n);
    for (int j = 0; j < n; ++j) {
      double xi = axis.x(j);
      chirped[j] = in[j] * std::polar(1.0, 0.5 * cot * xi * xi) *
                   std::polar(1.0, -axis.x_min * xi * inv_sin);
    }
    double phi = axis.dx() * axis.dx() * inv_sin;
    tomokit::ChirpZ czt(n, n, 0, phi);
    czt.run(chirped.data(), out.data());
    for (int l = 0; l < n; ++l) {
      double x = axis.x(l);
      out[l] *= c_front * axis.dx() *
                std::polar(1.0, 0.5 * cot * x * x) *
                std::polar(1.0, -static_cast<double>(l) * axis.dx() *
                                    axis.x_min * inv_sin);
    }
  }
  if (reflect) {
    std::vector<cplx> r(n);
    // x_l -> -x_l: with a symmetric half-open grid, -x_l sits at index n-l
    for (int l = 0; l < n; ++l) {
      int src = (n - l) % n;
      r[l] = -out[src];  // F_pi = parity up to the e^{i pi/2} phase
    }
    out = std::move(r);
  }
  return out;
}

inline double sup_diff(const std::vector<double>& a,
                       const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double l1_diff_1d(const XGrid& x, const std::vector<double>& a,
                         const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s * x.dx();
}

}  // namespace oracles

#endif
