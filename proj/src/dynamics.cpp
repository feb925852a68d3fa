#include "tomokit/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tomokit/fft.hpp"
#include "tomokit/tomography.hpp"

namespace tomokit {

Potential::Potential(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
  if (coeffs_.size() > 7)
    throw ValidationError("potential degree is capped at 6");
  for (double c : coeffs_)
    if (!std::isfinite(c))
      throw ValidationError("potential coefficients must be finite");
}

int Potential::degree() const {
  for (int k = static_cast<int>(coeffs_.size()) - 1; k >= 0; --k)
    if (coeffs_[k] != 0.0) return k;
  return 0;
}

double Potential::value(double q) const {
  double v = 0.0;
  for (int k = static_cast<int>(coeffs_.size()) - 1; k >= 0; --k)
    v = v * q + coeffs_[k];
  return v;
}

double Potential::derivative(int order, double q) const {
  double v = 0.0;
  for (int k = static_cast<int>(coeffs_.size()) - 1; k >= order; --k) {
    double c = coeffs_[k];
    for (int m = 0; m < order; ++m) c *= (k - m);
    v = v * q + c;
  }
  return v;
}

std::vector<int> Potential::moyal_orders() const {
  std::vector<int> orders;
  int d = degree();
  for (int n = 1; 2 * n + 1 <= d; ++n) {
    // U^(2n+1) is identically zero iff all coefficients above index 2n
    // vanish
    bool active = false;
    for (int k = 2 * n + 1; k <= d; ++k)
      if (coeff(k) != 0.0) active = true;
    if (active) orders.push_back(n);
  }
  return orders;
}

void EvolutionSpec::validate() const {
  if (!(t_final >= 0.0) || !std::isfinite(t_final))
    throw ValidationError("evolution requires t_final >= 0");
  if (!(dt >= 0.0) || !std::isfinite(dt))
    throw ValidationError("evolution requires dt >= 0 (0 = automatic)");
  if (!(hbar > 0.0))
    throw ValidationError("evolution requires hbar > 0");
}

double advective_dt_bound(const PhaseSpaceGrid& grid, const Potential& U) {
  double p_max = std::max(std::abs(grid.p_min), std::abs(grid.p_max));
  double force_max = 0.0;
  for (int i = 0; i <= grid.n_q; ++i) {
    double q = grid.q_min + i * grid.dq();
    force_max = std::max(force_max, std::abs(U.derivative(1, q)));
  }
  double bound = 1e9;
  if (p_max > 0.0) bound = std::min(bound, grid.dq() / p_max);
  if (force_max > 0.0) bound = std::min(bound, grid.dp() / force_max);
  return 0.5 * bound;
}

namespace {

constexpr double kPadFraction = 0.25;  // grid enlargement for the guard band
constexpr double kAutoDtCap = 1e-3;    // splitting-accuracy cap on auto dt
constexpr double kMassDriftLimit = 1e-3;
constexpr double kBlowUpLimit = 1e6;
constexpr double kPadBandRelLimit = 1e-5;

struct PaddedLayout {
  PhaseSpaceGrid grid;  // enlarged grid, same spacing
  int off_q = 0, off_p = 0;
};

PaddedLayout pad_grid(const PhaseSpaceGrid& g) {
  PaddedLayout lay;
  int nq = next_fast_fft_size(
      g.n_q + 2 * static_cast<int>(std::ceil(0.5 * kPadFraction * g.n_q)));
  int np = next_fast_fft_size(
      g.n_p + 2 * static_cast<int>(std::ceil(0.5 * kPadFraction * g.n_p)));
  lay.off_q = (nq - g.n_q) / 2;
  lay.off_p = (np - g.n_p) / 2;
  lay.grid = g;
  lay.grid.n_q = nq;
  lay.grid.n_p = np;
  lay.grid.q_min = g.q_min - lay.off_q * g.dq();
  lay.grid.q_max = lay.grid.q_min + nq * g.dq();
  lay.grid.p_min = g.p_min - lay.off_p * g.dp();
  lay.grid.p_max = lay.grid.p_min + np * g.dp();
  return lay;
}

// Strang-split spectral propagator on the padded grid.
class SplitStepEngine {
 public:
  SplitStepEngine(const PhaseSpaceField& field, const Potential& U,
                  const EvolutionSpec& spec)
      : source_grid_(field.grid()),
        lay_(pad_grid(field.grid())),
        potential_(U),
        spec_(spec) {
    const auto& g = lay_.grid;
    w_.assign(g.size(), cplx(0.0, 0.0));
    for (int i = 0; i < source_grid_.n_q; ++i)
      for (int j = 0; j < source_grid_.n_p; ++j)
        w_[idx(i + lay_.off_q, j + lay_.off_p)] = field.at(i, j);
    initial_mass_ = mass();
    initial_max_ = max_abs();

    // Active correction orders; classical transport keeps only n = 0.
    series_orders_ = {0};
    if (spec_.mode == EvolutionMode::Quantum)
      for (int n : potential_.moyal_orders()) series_orders_.push_back(n);
  }

  void set_dt(double dt) {
    if (dt == dt_) return;
    dt_ = dt;
    const auto& g = lay_.grid;

    kick_half_.resize(g.size());
    kick_full_.resize(g.size());
    for (int i = 0; i < g.n_q; ++i) {
      double q = g.q(i);
      for (int m = 0; m < g.n_p; ++m) {
        int sm = m < g.n_p / 2 ? m : m - g.n_p;
        double lambda = 2.0 * kPi * sm / (g.n_p * g.dp());
        double phase = 0.0;
        for (int n : series_orders_) {
          double fact = 1.0;
          for (int k = 2; k <= 2 * n + 1; ++k) fact *= k;
          phase += potential_.derivative(2 * n + 1, q) *
                   std::pow(lambda, 2 * n + 1) *
                   std::pow(0.5 * spec_.hbar, 2 * n) / fact;
        }
        cplx half = std::polar(1.0, 0.5 * dt_ * phase);
        kick_half_[idx(i, m)] = half;
        kick_full_[idx(i, m)] = half * half;
      }
    }

    drift_.resize(g.size());
    for (int j = 0; j < g.n_p; ++j) {
      double p = g.p(j);
      for (int m = 0; m < g.n_q; ++m) {
        int sm = m < g.n_q / 2 ? m : m - g.n_q;
        double k = 2.0 * kPi * sm / (g.n_q * g.dq());
        drift_[static_cast<std::size_t>(j) * g.n_q + m] =
            std::polar(1.0, -k * p * dt_);
      }
    }
  }

  // Advances by exactly `span` using steps of at most dt_target.
  void advance(double span, double dt_target) {
    if (span <= 0.0) return;
    long steps = std::max<long>(1, static_cast<long>(std::ceil(span / dt_target - 1e-12)));
    set_dt(span / steps);
    kick(kick_half_);
    for (long s = 0; s < steps; ++s) {
      drift();
      if (s + 1 < steps) {
        kick(kick_full_);
      } else {
        kick(kick_half_);
      }
      ++total_steps_;
      check_health();
    }
  }

  double mass() const {
    double s = 0.0;
    for (const auto& v : w_) s += v.real();
    return s * lay_.grid.dq() * lay_.grid.dp();
  }

  long total_steps() const { return total_steps_; }
  double initial_mass() const { return initial_mass_; }

  PhaseSpaceField snapshot(FieldKind kind, double* clamped_mass,
                           double* min_value) const {
    const auto& g = lay_.grid;
    std::vector<double> values(source_grid_.size());
    for (int i = 0; i < source_grid_.n_q; ++i)
      for (int j = 0; j < source_grid_.n_p; ++j)
        values[static_cast<std::size_t>(i) * source_grid_.n_p + j] =
            w_[idx(i + lay_.off_q, j + lay_.off_p)].real();
    double lo = *std::min_element(values.begin(), values.end());
    if (min_value) *min_value = lo;
    double clamped = 0.0;
    if (kind == FieldKind::Classical) {
      for (double& v : values)
        if (v < 0.0) {
          clamped -= v;
          v = 0.0;
        }
    }
    if (clamped_mass)
      *clamped_mass = clamped * g.dq() * g.dp();
    return PhaseSpaceField::unchecked(source_grid_, kind, std::move(values));
  }

 private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * lay_.grid.n_p + j;
  }

  void kick(const std::vector<cplx>& mult) {
    const auto& g = lay_.grid;
    double inv = 1.0 / g.n_p;
    for (int i = 0; i < g.n_q; ++i) {
      cplx* row = w_.data() + idx(i, 0);
      fft_forward(row, row, g.n_p);
      const cplx* m = mult.data() + idx(i, 0);
      for (int j = 0; j < g.n_p; ++j) row[j] *= m[j] * inv;
      fft_backward(row, row, g.n_p);
    }
  }

  void drift() {
    const auto& g = lay_.grid;
    scratch_.resize(g.size());
    for (int i = 0; i < g.n_q; ++i)
      for (int j = 0; j < g.n_p; ++j)
        scratch_[static_cast<std::size_t>(j) * g.n_q + i] = w_[idx(i, j)];
    double inv = 1.0 / g.n_q;
    for (int j = 0; j < g.n_p; ++j) {
      cplx* line = scratch_.data() + static_cast<std::size_t>(j) * g.n_q;
      fft_forward(line, line, g.n_q);
      const cplx* m = drift_.data() + static_cast<std::size_t>(j) * g.n_q;
      for (int i = 0; i < g.n_q; ++i) line[i] *= m[i] * inv;
      fft_backward(line, line, g.n_q);
    }
    for (int i = 0; i < g.n_q; ++i)
      for (int j = 0; j < g.n_p; ++j)
        w_[idx(i, j)] = scratch_[static_cast<std::size_t>(j) * g.n_q + i];
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : w_) m = std::max(m, std::abs(v.real()));
    return m;
  }

  void check_health() {
    const auto& g = lay_.grid;
    double m = 0.0, peak = 0.0, pad_peak = 0.0;
    for (int i = 0; i < g.n_q; ++i) {
      bool pad_i = i < lay_.off_q || i >= lay_.off_q + source_grid_.n_q;
      for (int j = 0; j < g.n_p; ++j) {
        double v = w_[idx(i, j)].real();
        m += v;
        double a = std::abs(v);
        peak = std::max(peak, a);
        if (pad_i || j < lay_.off_p || j >= lay_.off_p + source_grid_.n_p)
          pad_peak = std::max(pad_peak, a);
      }
    }
    m *= g.dq() * g.dp();
    if (std::abs(m - initial_mass_) > kMassDriftLimit)
      throw NumericalError("evolve_field: mass drifted to " + std::to_string(m));
    if (peak > kBlowUpLimit)
      throw NumericalError("evolve_field: field values blew up");
    if (pad_peak > kPadBandRelLimit * std::max(initial_max_, peak))
      throw NumericalError(
          "evolve_field: advected mass reached the pad boundary; enlarge the "
          "grid or shorten the evolution");
  }

  PhaseSpaceGrid source_grid_;
  PaddedLayout lay_;
  Potential potential_;
  EvolutionSpec spec_;
  std::vector<int> series_orders_;
  std::vector<cplx> w_, scratch_;
  std::vector<cplx> kick_half_, kick_full_, drift_;
  double dt_ = -1.0;
  double initial_mass_ = 0.0, initial_max_ = 0.0;
  long total_steps_ = 0;
};

double resolve_dt(const PhaseSpaceField& field, const Potential& U,
                  const EvolutionSpec& spec) {
  double bound = advective_dt_bound(field.grid(), U);
  if (spec.dt > 0.0) {
    if (spec.dt > bound + 1e-15)
      throw ValidationError("evolution dt = " + std::to_string(spec.dt) +
                            " exceeds the advective stability bound " +
                            std::to_string(bound));
    return spec.dt;
  }
  return std::min(bound, kAutoDtCap);
}

void validate_evolution_input(const PhaseSpaceField& field,
                              const EvolutionSpec& spec) {
  spec.validate();
  if (spec.mode == EvolutionMode::Quantum && field.kind() != FieldKind::Wigner)
    throw ValidationError("quantum evolution requires a Wigner-kind field");
  if (std::abs(field.mass() - 1.0) > 1e-3)
    throw ValidationError("evolution input field is not normalized");
}

}  // namespace

EvolveResult evolve_field(const PhaseSpaceField& field, const Potential& U,
                          const EvolutionSpec& spec) {
  return evolve_field_checkpoints(field, U, spec, {}, {});
}

EvolveResult evolve_field_checkpoints(
    const PhaseSpaceField& field, const Potential& U, const EvolutionSpec& spec,
    const std::vector<double>& checkpoint_times,
    const std::function<void(double, const PhaseSpaceField&)>& on_checkpoint) {
  validate_evolution_input(field, spec);
  for (std::size_t i = 0; i < checkpoint_times.size(); ++i) {
    double t = checkpoint_times[i];
    if (!(t >= 0.0) || t > spec.t_final + 1e-12)
      throw ValidationError("checkpoint times must lie in [0, t_final]");
    if (i > 0 && t < checkpoint_times[i - 1])
      throw ValidationError("checkpoint times must be ascending");
  }

  EvolveResult res{field, 0.0, 0.0, 0.0, 0};
  if (spec.t_final == 0.0) {
    if (on_checkpoint)
      for (double t : checkpoint_times) on_checkpoint(t, field);
    return res;
  }

  double dt = resolve_dt(field, U, spec);
  SplitStepEngine engine(field, U, spec);

  double t = 0.0;
  auto emit = [&](double at) {
    if (on_checkpoint)
      on_checkpoint(at, engine.snapshot(field.kind(), nullptr, nullptr));
  };
  for (double tc : checkpoint_times) {
    if (tc <= t + 1e-15) {
      emit(tc);
      continue;
    }
    engine.advance(tc - t, dt);
    t = tc;
    emit(tc);
  }
  if (spec.t_final > t + 1e-15) engine.advance(spec.t_final - t, dt);

  res.field =
      engine.snapshot(field.kind(), &res.clamped_mass, &res.min_value);
  res.mass_drift = std::abs(engine.mass() - engine.initial_mass());
  res.steps = engine.total_steps();
  if (on_checkpoint && !checkpoint_times.empty() &&
      std::abs(checkpoint_times.back() - spec.t_final) > 1e-12)
    on_checkpoint(spec.t_final, res.field);
  return res;
}

AffineFlow quadratic_flow(const Potential& U, double t) {
  if (U.degree() > 2)
    throw ValidationError("quadratic_flow needs a potential of degree <= 2");
  double c1 = U.coeff(1);
  double w2 = 2.0 * U.coeff(2);
  AffineFlow f;
  if (std::abs(w2) < 1e-14) {
    f.m00 = 1.0, f.m01 = t, f.m10 = 0.0, f.m11 = 1.0;
    f.b0 = -0.5 * c1 * t * t;
  } else if (w2 > 0.0) {
    double w = std::sqrt(w2);
    f.m00 = std::cos(w * t);
    f.m01 = std::sin(w * t) / w;
    f.m10 = -w * std::sin(w * t);
    f.m11 = std::cos(w * t);
    f.b0 = c1 * (f.m00 - 1.0) / w2;
  } else {
    double g = std::sqrt(-w2);
    f.m00 = std::cosh(g * t);
    f.m01 = std::sinh(g * t) / g;
    f.m10 = g * std::sinh(g * t);
    f.m11 = std::cosh(g * t);
    f.b0 = c1 * (f.m00 - 1.0) / w2;
  }
  f.b1 = -c1 * f.m01;
  return f;
}

namespace {

// Spectral x translation of a row (zero-padded to suppress wrap-around).
std::vector<double> translate_row(const XGrid& x, std::span<const double> row,
                                  double shift) {
  if (shift == 0.0) return std::vector<double>(row.begin(), row.end());
  int pad = next_fast_fft_size(2 * x.n_x);
  std::vector<cplx> buf(pad, cplx(0.0, 0.0));
  for (int l = 0; l < x.n_x; ++l) buf[l] = cplx(row[l], 0.0);
  fft_forward(buf);
  for (int tbin = 0; tbin < pad; ++tbin) {
    int sm = tbin < pad / 2 ? tbin : tbin - pad;
    double k = 2.0 * kPi * sm / (pad * x.dx());
    buf[tbin] *= std::polar(1.0 / pad, -k * shift);
  }
  fft_backward(buf);
  std::vector<double> out(x.n_x);
  for (int l = 0; l < x.n_x; ++l) out[l] = buf[l].real();
  return out;
}

}  // namespace

Tomogram evolve_tomogram(const Tomogram& tomogram, const Potential& U,
                         const EvolutionSpec& spec) {
  spec.validate();
  if (spec.t_final == 0.0) return tomogram;

  if (U.degree() <= 2) {
    AffineFlow f = quadratic_flow(U, spec.t_final);
    // inverse transpose of the flow matrix (unit determinant)
    double i00 = f.m11, i01 = -f.m10, i10 = -f.m01, i11 = f.m00;
    std::vector<Frame> frames;
    std::vector<double> values;
    frames.reserve(tomogram.frame_count());
    values.reserve(tomogram.values().size());
    for (int fr = 0; fr < tomogram.frame_count(); ++fr) {
      const Frame& g = tomogram.frames()[fr];
      Frame out{i00 * g.mu + i01 * g.nu, i10 * g.mu + i11 * g.nu};
      double shift = out.mu * f.b0 + out.nu * f.b1;
      auto row = translate_row(tomogram.x(), tomogram.row(fr), shift);
      frames.push_back(out);
      values.insert(values.end(), row.begin(), row.end());
    }
    return Tomogram::unchecked(tomogram.x(), std::move(frames),
                               std::move(values));
  }

  // Anharmonic route: reconstruct, propagate in phase space, re-project.
  for (const Frame& fr : tomogram.frames())
    if (!fr.is_canonical(1e-9))
      throw ValidationError(
          "evolve_tomogram: degree > 2 requires canonical frames");
  InverseOptions opts;
  opts.target_kind =
      spec.mode == EvolutionMode::Quantum ? FieldKind::Wigner : FieldKind::Classical;
  InverseResult inv = inverse_tomogram(tomogram, opts);
  EvolveResult ev = evolve_field(inv.field, U, spec);
  Tomogram raw =
      forward_tomogram_tolerant(ev.field, tomogram.frames(), tomogram.x());
  // clamp reconstruction ringing and restore unit row masses
  std::vector<double> values(raw.values());
  for (int fr = 0; fr < raw.frame_count(); ++fr) {
    double* row = values.data() + static_cast<std::size_t>(fr) * raw.x().n_x;
    double floor = 0.0;
    for (int l = 0; l < raw.x().n_x; ++l) floor = std::min(floor, row[l]);
    if (floor < -1e-3)
      throw NumericalError("evolve_tomogram: re-projected row has negative "
                           "probability beyond tolerance");
    double mass = 0.0;
    for (int l = 0; l < raw.x().n_x; ++l) {
      if (row[l] < 0.0) row[l] = 0.0;
      mass += row[l];
    }
    mass *= raw.x().dx();
    for (int l = 0; l < raw.x().n_x; ++l) row[l] /= mass;
  }
  return Tomogram::checked(raw.x(), raw.frames(), std::move(values));
}

std::vector<double> free_tomogram_analytic(const XGrid& x, const Frame& frame,
                                           double q0, double p0, double eps,
                                           double t) {
  x.validate();
  frame.validate();
  if (!(eps > 0.0))
    throw ValidationError("free_tomogram_analytic: eps must be > 0");
  double center = frame.mu * (q0 + t * p0) + frame.nu * p0;
  double sigma = eps * std::hypot(frame.mu, frame.nu + t * frame.mu);
  if (sigma < 3.0 * x.dx())
    throw ValidationError(
        "free_tomogram_analytic: smoothed row is unresolvable on this x grid");
  std::vector<double> row(x.n_x);
  double norm = 1.0 / (sigma * std::sqrt(2.0 * kPi));
  for (int l = 0; l < x.n_x; ++l) {
    double u = (x.x(l) - center) / sigma;
    row[l] = norm * std::exp(-0.5 * u * u);
  }
  return row;
}

}  // namespace tomokit
