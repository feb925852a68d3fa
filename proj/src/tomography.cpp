#include "tomokit/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "tomokit/fft.hpp"
#include "tomokit/parallel.hpp"

namespace tomokit {

namespace {

// Extended row geometry: rows are synthesized on a window twice the
// requested width so mass spilling past the requested range is visible and
// can be measured instead of silently aliasing.
struct RowWindow {
  int m = 0;         // extended sample count (2 * n_x)
  int pad_left = 0;  // requested window starts here
  double x_min_ext = 0.0;
  double dk = 0.0;   // conjugate frequency step, 2*pi/(m*dx)
};

RowWindow make_window(const XGrid& x) {
  RowWindow w;
  w.m = 2 * x.n_x;
  w.pad_left = x.n_x / 2;
  w.x_min_ext = x.x_min - w.pad_left * x.dx();
  w.dk = 2.0 * kPi / (w.m * x.dx());
  return w;
}

// One frame of the Fourier-slice forward map.  Writes the extended-window
// row and returns the mass observed outside the requested range.
double slice_row(const PhaseSpaceField& field, const Frame& frame,
                 const XGrid& x, const RowWindow& win, const ChirpZ& czt,
                 double* out_row) {
  const auto& g = field.grid();
  const int m = win.m;
  const int n0 = -m / 2;

  // w^(k_n) = sum_i e^{-i k_n mu q_i} sum_j f_ij e^{-i k_n nu p_j}
  // The inner sums over j are chirp-Z transforms with phi = dk*nu*dp; the
  // outer sum accumulates with per-row phase recurrences.
  std::vector<cplx> row_in(g.n_p), row_spec(m);
  std::vector<cplx> acc(m, cplx(0.0, 0.0));
  for (int i = 0; i < g.n_q; ++i) {
    for (int j = 0; j < g.n_p; ++j) row_in[j] = cplx(field.at(i, j), 0.0);
    czt.run(row_in.data(), row_spec.data());
    double beta = win.dk * (frame.mu * g.q(i) + frame.nu * g.p_min);
    cplx z = std::polar(1.0, -static_cast<double>(n0) * beta);
    cplx step = std::polar(1.0, -beta);
    for (int n = 0; n < m; ++n) {
      acc[n] += row_spec[n] * z;
      z *= step;
    }
  }

  // Reorder the signed-frequency samples into FFT bin order, attach the
  // window phase, and invert.
  double cell = g.dq() * g.dp();
  std::vector<cplx> spec(m);
  for (int t = 0; t < m; ++t) {
    int signed_n = t < m / 2 ? t : t - m;
    double k = signed_n * win.dk;
    spec[t] = acc[signed_n - n0] * cell * std::polar(1.0, k * win.x_min_ext);
  }
  fft_backward(spec);

  double scale = 1.0 / (m * x.dx());
  double outside = 0.0;
  for (int l = 0; l < m; ++l) {
    double v = spec[l].real() * scale;
    out_row[l] = v;
    if (l < win.pad_left || l >= win.pad_left + x.n_x) outside += v;
  }
  return outside * x.dx();
}

}  // namespace

namespace {

std::vector<double> forward_rows(const PhaseSpaceField& field,
                                 const std::vector<Frame>& frames,
                                 const XGrid& x) {
  field.grid().validate();
  x.validate();
  if (frames.empty())
    throw ValidationError("forward_tomogram: frame list is empty");
  for (const auto& f : frames) f.validate();

  RowWindow win = make_window(x);
  std::vector<double> values(frames.size() * static_cast<std::size_t>(x.n_x));
  std::vector<double> outside(frames.size(), 0.0);

  parallel_chunks(frames.size(), [&](std::size_t begin, std::size_t end) {
    std::vector<double> ext(win.m);
    for (std::size_t f = begin; f < end; ++f) {
      double phi = win.dk * frames[f].nu * field.grid().dp();
      ChirpZ czt(field.grid().n_p, win.m, -win.m / 2, phi);
      outside[f] = slice_row(field, frames[f], x, win, czt, ext.data());
      std::copy(ext.begin() + win.pad_left, ext.begin() + win.pad_left + x.n_x,
                values.begin() + f * static_cast<std::size_t>(x.n_x));
    }
  });

  for (std::size_t f = 0; f < frames.size(); ++f)
    if (outside[f] > 1e-3)
      throw NumericalError(
          "forward_tomogram: frame (" + std::to_string(frames[f].mu) + ", " +
          std::to_string(frames[f].nu) + ") loses " +
          std::to_string(outside[f]) + " of its mass outside the x range");
  return values;
}

}  // namespace

Tomogram forward_tomogram(const PhaseSpaceField& field,
                          const std::vector<Frame>& frames, const XGrid& x) {
  return Tomogram::checked(x, frames, forward_rows(field, frames, x));
}

Tomogram forward_tomogram_tolerant(const PhaseSpaceField& field,
                                   const std::vector<Frame>& frames,
                                   const XGrid& x) {
  return Tomogram::unchecked(x, frames, forward_rows(field, frames, x));
}

Tomogram radon_tomogram(const PhaseSpaceField& field,
                        const std::vector<double>& angles, const XGrid& x) {
  std::vector<Frame> frames;
  frames.reserve(angles.size());
  for (double th : angles) frames.push_back(Frame::from_angle(th));
  return forward_tomogram(field, frames, x);
}

std::vector<double> uniform_angles(int count) {
  if (count < 1) throw ValidationError("uniform_angles: count must be >= 1");
  std::vector<double> a(count);
  for (int i = 0; i < count; ++i) a[i] = i * kPi / count;
  return a;
}

InverseResult inverse_tomogram(const Tomogram& tomogram,
                               const PhaseSpaceGrid& grid,
                               const InverseOptions& options) {
  grid.validate();
  const XGrid& x = tomogram.x();
  const int n_frames = tomogram.frame_count();

  std::vector<double> angles(n_frames);
  for (int f = 0; f < n_frames; ++f) {
    const Frame& fr = tomogram.frames()[f];
    if (!fr.is_canonical(1e-9))
      throw ValidationError(
          "inverse_tomogram: frame (" + std::to_string(fr.mu) + ", " +
          std::to_string(fr.nu) +
          ") is not canonical; canonicalize_tomogram first");
    angles[f] = canonicalize(fr).theta;
  }
  std::vector<double> sorted = angles;
  std::sort(sorted.begin(), sorted.end());
  int distinct = n_frames == 0 ? 0 : 1;
  for (int f = 1; f < n_frames; ++f)
    if (sorted[f] - sorted[f - 1] > 1e-12) ++distinct;
  if (distinct < 8)
    throw ValidationError("inverse_tomogram: needs at least 8 distinct angles, got " +
                          std::to_string(distinct));

  // Ramp-filter each row: FFT on a zero-padded window, multiply by
  // |k| (Hann-apodized at the grid Nyquist by default), invert.
  const int pad = next_fast_fft_size(2 * x.n_x);
  const double dk = 2.0 * kPi / (pad * x.dx());
  const double k_nyquist = kPi / x.dx();
  std::vector<double> filtered(static_cast<std::size_t>(n_frames) * x.n_x);

  parallel_chunks(n_frames, [&](std::size_t begin, std::size_t end) {
    std::vector<cplx> buf(pad);
    for (std::size_t f = begin; f < end; ++f) {
      auto row = tomogram.row(static_cast<int>(f));
      std::fill(buf.begin(), buf.end(), cplx(0.0, 0.0));
      for (int l = 0; l < x.n_x; ++l) buf[l] = cplx(row[l], 0.0);
      fft_forward(buf);
      for (int t = 0; t < pad; ++t) {
        int signed_t = t <= pad / 2 ? t : t - pad;
        double k = std::abs(signed_t * dk);
        double gain = k;
        if (options.hann_apodization)
          gain *= k <= k_nyquist ? 0.5 * (1.0 + std::cos(kPi * k / k_nyquist))
                                 : 0.0;
        buf[t] *= gain;
      }
      fft_backward(buf);
      double scale = 1.0 / (2.0 * kPi * pad);
      for (int l = 0; l < x.n_x; ++l)
        filtered[f * static_cast<std::size_t>(x.n_x) + l] =
            buf[l].real() * scale;
    }
  });

  // Back-project: f(q, p) = dtheta * sum_a g_a(q cos + p sin), gathered with
  // linear interpolation along each filtered row.
  const double dtheta = kPi / n_frames;
  std::vector<double> values(grid.size(), 0.0);
  parallel_chunks(grid.n_q, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      double q = grid.q(static_cast<int>(i));
      for (int f = 0; f < n_frames; ++f) {
        double c = std::cos(angles[f]), s = std::sin(angles[f]);
        std::span<const double> g{
            filtered.data() + static_cast<std::size_t>(f) * x.n_x,
            static_cast<std::size_t>(x.n_x)};
        double* out = values.data() + i * grid.n_p;
        for (int j = 0; j < grid.n_p; ++j)
          out[j] += dtheta * sample_row(x, g, q * c + grid.p(j) * s);
      }
    }
  });

  InverseResult res{PhaseSpaceField{}, 0.0, 1.0, 0.0, 0.0};
  double raw = 0.0;
  for (double v : values) raw += v;
  raw *= grid.dq() * grid.dp();
  if (!(raw > 0.0))
    throw NumericalError("inverse_tomogram: back-projected mass is not positive");
  res.raw_mass = raw;
  res.renorm_factor = 1.0 / raw;
  for (double& v : values) v *= res.renorm_factor;
  res.min_value = *std::min_element(values.begin(), values.end());

  if (options.target_kind == FieldKind::Classical) {
    double clamped = 0.0;
    for (double& v : values)
      if (v < 0.0) {
        clamped -= v;
        v = 0.0;
      }
    res.clamped_mass = clamped * grid.dq() * grid.dp();
    double mass = 0.0;
    for (double v : values) mass += v;
    mass *= grid.dq() * grid.dp();
    for (double& v : values) v /= mass;
  }

  res.field =
      PhaseSpaceField::unchecked(grid, options.target_kind, std::move(values));
  return res;
}

InverseResult inverse_tomogram(const Tomogram& tomogram,
                               const InverseOptions& options) {
  const XGrid& x = tomogram.x();
  PhaseSpaceGrid grid{x.x_min, x.x_max, x.x_min, x.x_max, x.n_x, x.n_x};
  return inverse_tomogram(tomogram, grid, options);
}

std::vector<double> homogeneity_rescale(const XGrid& x,
                                        std::span<const double> row,
                                        double s) {
  if (s == 0.0)
    throw ValidationError("homogeneity_rescale: scale must be nonzero");
  if (static_cast<int>(row.size()) != x.n_x)
    throw ValidationError("homogeneity_rescale: row size mismatch");
  std::vector<double> out(x.n_x);
  if (s == 1.0) {
    std::copy(row.begin(), row.end(), out.begin());
    return out;
  }

  // Band-limited resampling: evaluate the trigonometric interpolant of the
  // zero-padded row at the stretched points x/s.  Keeps the rescaling
  // invariants at roundoff level for smooth rows, unlike local
  // interpolation.
  const int m = 2 * x.n_x;
  const double x_min_pad = x.x_min - (x.n_x / 2) * x.dx();
  std::vector<cplx> spec(m, cplx(0.0, 0.0));
  for (int l = 0; l < x.n_x; ++l)
    spec[l + x.n_x / 2] = cplx(row[l], 0.0);
  fft_forward(spec);

  double inv = 1.0 / std::abs(s);
  for (int l = 0; l < x.n_x; ++l) {
    double y = x.x(l) / s;
    if (y < x_min_pad || y > x_min_pad + (m - 1) * x.dx()) {
      out[l] = 0.0;
      continue;
    }
    cplx acc(0.0, 0.0);
    for (int t = 0; t < m; ++t) {
      int sm = t < m / 2 ? t : t - m;
      double k = 2.0 * kPi * sm / (m * x.dx());
      acc += spec[t] * std::polar(1.0, k * (y - x_min_pad));
    }
    out[l] = inv * acc.real() / m;
  }
  return out;
}

Tomogram canonicalize_tomogram(const Tomogram& tomogram) {
  const XGrid& x = tomogram.x();
  std::vector<Frame> frames;
  std::vector<double> values;
  frames.reserve(tomogram.frame_count());
  values.reserve(tomogram.values().size());
  for (int f = 0; f < tomogram.frame_count(); ++f) {
    CanonicalFrame cf = canonicalize(tomogram.frames()[f]);
    frames.push_back(Frame::from_angle(cf.theta));
    // row at s*(cos, sin) -> row at (cos, sin) is homogeneity with 1/s
    auto row = homogeneity_rescale(x, tomogram.row(f), 1.0 / cf.scale);
    values.insert(values.end(), row.begin(), row.end());
  }
  return Tomogram::unchecked(x, std::move(frames), std::move(values));
}

CatTomogramRow cat_tomogram_closed_form(const XGrid& x, double theta,
                                        double q0, double p0) {
  x.validate();
  double r2 = q0 * q0 + p0 * p0;
  if (r2 < 0.5)
    throw ValidationError(
        "cat_tomogram_closed_form: q0^2 + p0^2 < 0.5 is degenerate");

  double c = std::cos(theta), s = std::sin(theta);
  double root_pi = std::sqrt(kPi);
  double prefactor = 0.5 * std::exp(-r2);
  auto omega_a = [&](double xv) {
    return std::exp(-xv * xv - q0 * q0 * c * c - p0 * p0 * s * s +
                    2.0 * xv * q0 * c + 2.0 * xv * p0 * s -
                    2.0 * q0 * p0 * s * c) /
           root_pi;
  };
  auto omega_b = [&](double xv) {
    cplx arg(-xv * xv - q0 * q0 * c * c - p0 * p0 * s * s -
                 2.0 * q0 * p0 * s * c,
             -2.0 * xv * q0 * s + 2.0 * xv * p0 * c);
    return std::exp(arg) / root_pi;
  };

  CatTomogramRow out;
  out.values.resize(x.n_x);
  for (int l = 0; l < x.n_x; ++l) {
    double xv = x.x(l);
    cplx wb = omega_b(xv);
    double bracket = omega_a(xv) - 2.0 * wb.real() + omega_a(-xv);
    out.values[l] = prefactor * bracket;
  }
  double mass = 0.0;
  for (double v : out.values) mass += v;
  mass *= x.dx();
  if (!(mass > 1e-12))
    throw NumericalError("cat_tomogram_closed_form: row mass vanishes on this x grid");
  out.raw_mass = mass;
  for (double& v : out.values) v /= mass;
  return out;
}

}  // namespace tomokit
