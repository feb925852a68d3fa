#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tomokit/states.hpp"
#include "tomokit/tomography.hpp"

using namespace tomokit;

namespace {

const PhaseSpaceGrid kWide{-6.0, 6.0, -6.0, 6.0, 256, 256};
const PhaseSpaceGrid kFine{-4.0, 4.0, -4.0, 4.0, 256, 256};
const XGrid kWideX{-6.0, 6.0, 256};
const XGrid kFineX{-4.0, 4.0, 256};

std::vector<double> gaussian_row(const XGrid& x, double center, double sigma) {
  std::vector<double> row(x.n_x);
  double norm = 1.0 / (sigma * std::sqrt(2.0 * kPi));
  for (int l = 0; l < x.n_x; ++l) {
    double u = (x.x(l) - center) / sigma;
    row[l] = norm * std::exp(-0.5 * u * u);
  }
  return row;
}

}  // namespace

TEST_CASE("identity frame reproduces the position marginal") {
  PhaseSpaceField w = make_vacuum(kWide);
  Tomogram t = forward_tomogram(w, {Frame{1.0, 0.0}, Frame{0.0, 1.0}}, kWideX);
  auto mq = position_marginal(w);
  auto mp = momentum_marginal(w);
  double sup_q = 0.0, sup_p = 0.0;
  for (int l = 0; l < kWideX.n_x; ++l) {
    sup_q = std::max(sup_q, std::abs(t.row(0)[l] - mq[l]));
    sup_p = std::max(sup_p, std::abs(t.row(1)[l] - mp[l]));
  }
  CHECK(sup_q <= 1e-6);
  CHECK(sup_p <= 1e-6);
}

TEST_CASE("vacuum rows are theta-independent unit Gaussians") {
  PhaseSpaceField w = make_vacuum(kWide);
  Tomogram t = radon_tomogram(w, {0.0, 0.3, 1.1, kPi / 2, 2.6}, kWideX);
  for (int f = 0; f < t.frame_count(); ++f) {
    CHECK(std::abs(t.row_mass(f) - 1.0) <= 1e-4);
    double sup = 0.0;
    for (int l = 0; l < kWideX.n_x; ++l) {
      double x = kWideX.x(l);
      sup = std::max(sup,
                     std::abs(t.row(f)[l] - std::exp(-x * x) / std::sqrt(kPi)));
    }
    CHECK(sup <= 1e-6);
    for (double v : t.row(f)) CHECK(v >= -1e-9);
  }
}

TEST_CASE("delta rows are translated scaled Gaussians (random frames)") {
  double q0 = 1.0, p0 = 2.0, eps = 0.1;
  PhaseSpaceField d = make_delta_approx(kFine, q0, p0, eps);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> angle(0.0, kPi);
  std::vector<Frame> frames;
  for (int k = 0; k < 8; ++k) frames.push_back(Frame::from_angle(angle(rng)));
  frames.push_back(Frame{0.9, -0.35});  // non-canonical
  Tomogram t = forward_tomogram(d, frames, kFineX);
  for (int f = 0; f < t.frame_count(); ++f) {
    const Frame& g = t.frames()[f];
    auto expected =
        gaussian_row(kFineX, g.mu * q0 + g.nu * p0, eps * g.norm());
    double sup = 0.0;
    for (int l = 0; l < kFineX.n_x; ++l)
      sup = std::max(sup, std::abs(t.row(f)[l] - expected[l]));
    CHECK(sup <= 1e-8);
  }
}

TEST_CASE("radon_tomogram is bit-identical to forward_tomogram") {
  PhaseSpaceField w = make_vacuum(kWide);
  std::vector<double> angles{0.0, 0.4, 1.0, 2.0};
  std::vector<Frame> frames;
  for (double a : angles) frames.push_back(Frame::from_angle(a));
  Tomogram via_radon = radon_tomogram(w, angles, kWideX);
  Tomogram via_forward = forward_tomogram(w, frames, kWideX);
  REQUIRE(via_radon.values().size() == via_forward.values().size());
  for (std::size_t i = 0; i < via_radon.values().size(); ++i)
    CHECK(via_radon.values()[i] == via_forward.values()[i]);
}

TEST_CASE("forward map agrees with the rotate-and-sum oracle") {
  PhaseSpaceField g = make_gaussian(kWide, 0.6, -0.4, 1.1, 0.8, 0.45);
  for (double theta : {0.35, 1.2, 2.4}) {
    Tomogram t = radon_tomogram(g, {theta}, kWideX);
    auto oracle = oracles::radon_direct(g, theta, kWideX);
    double sup = 0.0;
    for (int l = 0; l < kWideX.n_x; ++l)
      sup = std::max(sup, std::abs(t.row(0)[l] - oracle[l]));
    CHECK(sup <= 1e-3);  // oracle is bilinear-interpolation limited
  }
}

TEST_CASE("row masses equal the field mass to quadrature precision") {
  PhaseSpaceField cat = make_cat_wigner({-9, 9, -9, 9, 256, 256}, 3.0, 0.0);
  Tomogram t = radon_tomogram(cat, uniform_angles(8), XGrid{-9, 9, 256});
  for (int f = 0; f < t.frame_count(); ++f)
    CHECK(std::abs(t.row_mass(f) - cat.mass()) <= 1e-12);
}

TEST_CASE("forward map input validation and clipping") {
  PhaseSpaceField w = make_vacuum(kWide);
  CHECK_THROWS_AS(forward_tomogram(w, {}, kWideX), ValidationError);
  CHECK_THROWS_AS(forward_tomogram(w, {Frame{0.0, 0.0}}, kWideX),
                  ValidationError);

  // a frame scaled by 3 pushes the row mass outside the narrow window
  PhaseSpaceField d = make_delta_approx(kFine, 3.0, 0.0, 0.12);
  XGrid narrow{-4.0, 4.0, 128};
  CHECK_THROWS_AS(forward_tomogram(d, {Frame{1.5, 0.0}}, narrow),
                  NumericalError);
}

TEST_CASE("homogeneity rescale: identity, delta scaling, mass") {
  PhaseSpaceField d = make_delta_approx(kFine, 1.0, 0.5, 0.12);
  Frame g{0.8, 0.6};
  Tomogram t = forward_tomogram(d, {g}, kFineX);

  auto same = homogeneity_rescale(kFineX, t.row(0), 1.0);
  for (int l = 0; l < kFineX.n_x; ++l) CHECK(same[l] == t.row(0)[l]);

  // s = 2: center and width double, height halves, mass stays 1
  auto scaled = homogeneity_rescale(kFineX, t.row(0), 2.0);
  double x0 = g.mu * 1.0 + g.nu * 0.5;
  auto expected = gaussian_row(kFineX, 2.0 * x0, 2.0 * 0.12 * g.norm());
  double sup = 0.0, mass = 0.0;
  for (int l = 0; l < kFineX.n_x; ++l) {
    sup = std::max(sup, std::abs(scaled[l] - expected[l]));
    mass += scaled[l];
  }
  CHECK(sup <= 1e-6);
  CHECK(std::abs(mass * kFineX.dx() - 1.0) <= 1e-6);

  CHECK_THROWS_AS(homogeneity_rescale(kFineX, t.row(0), 0.0), ValidationError);
}

TEST_CASE("canonicalization undoes frame scaling within resampling error") {
  PhaseSpaceField w = make_gaussian(kWide, 0.5, -0.3, 0.9, 1.1, 0.2);
  std::vector<Frame> scaled, canonical;
  for (double theta : {0.2, 0.9, 1.7, 2.8}) {
    scaled.push_back(Frame{1.7 * std::cos(theta), 1.7 * std::sin(theta)});
    canonical.push_back(Frame::from_angle(theta));
  }
  Tomogram t_scaled = forward_tomogram(w, scaled, kWideX);
  Tomogram t_canonical = forward_tomogram(w, canonical, kWideX);
  Tomogram fixed = canonicalize_tomogram(t_scaled);
  for (int f = 0; f < fixed.frame_count(); ++f) {
    CHECK(fixed.frames()[f].is_canonical());
    double sup = 0.0;
    for (int l = 0; l < kWideX.n_x; ++l)
      sup = std::max(sup,
                     std::abs(fixed.row(f)[l] - t_canonical.row(f)[l]));
    CHECK(sup <= 1e-6);
  }
}

TEST_CASE("negative-direction frames canonicalize through reflection") {
  PhaseSpaceField d = make_delta_approx(kFine, 1.0, 0.0, 0.12);
  // (-1, 0) is theta = 0 with scale -1: row must reflect in x
  Tomogram t = forward_tomogram(d, {Frame{-1.0, 0.0}}, kFineX);
  Tomogram fixed = canonicalize_tomogram(t);
  auto expected = gaussian_row(kFineX, 1.0, 0.12);
  double sup = 0.0;
  for (int l = 0; l < kFineX.n_x; ++l)
    sup = std::max(sup, std::abs(fixed.row(0)[l] - expected[l]));
  CHECK(sup <= 1e-6);
}

TEST_CASE("round-trip inversion of the vacuum converges with angle count") {
  PhaseSpaceField w = make_vacuum(kWide);
  double previous = 1e9;
  for (int n_angles : {16, 32, 64}) {
    Tomogram t = radon_tomogram(w, uniform_angles(n_angles), kWideX);
    InverseResult rec = inverse_tomogram(t, kWide);
    double err = l1_distance(rec.field, w);
    CHECK(err < previous);
    previous = err;
    if (n_angles == 64) CHECK(err <= 1e-2);
  }
}

TEST_CASE("theta-independent Gaussian tomogram inverts to the vacuum") {
  int n_angles = 64;
  std::vector<Frame> frames;
  std::vector<double> values;
  auto row = gaussian_row(kWideX, 0.0, 1.0 / std::sqrt(2.0));
  for (double a : uniform_angles(n_angles)) {
    frames.push_back(Frame::from_angle(a));
    values.insert(values.end(), row.begin(), row.end());
  }
  Tomogram t = Tomogram::checked(kWideX, frames, values);
  InverseResult rec = inverse_tomogram(t, kWide);
  CHECK(l1_distance(rec.field, make_vacuum(kWide)) <= 1e-2);
}

TEST_CASE("delta tomogram inverts to a peak at (q0, p0)") {
  double q0 = 1.0, p0 = 2.0, eps = 0.15;
  std::vector<Frame> frames;
  std::vector<double> values;
  for (double a : uniform_angles(64)) {
    Frame g = Frame::from_angle(a);
    frames.push_back(g);
    auto row = gaussian_row(kFineX, g.mu * q0 + g.nu * p0, eps);
    values.insert(values.end(), row.begin(), row.end());
  }
  Tomogram t = Tomogram::checked(kFineX, frames, values);
  InverseResult rec = inverse_tomogram(t, kFine,
                                       {true, FieldKind::Classical});
  int best_i = 0, best_j = 0;
  double best = -1.0;
  for (int i = 0; i < kFine.n_q; ++i)
    for (int j = 0; j < kFine.n_p; ++j)
      if (rec.field.at(i, j) > best) {
        best = rec.field.at(i, j);
        best_i = i;
        best_j = j;
      }
  CHECK(std::abs(kFine.q(best_i) - q0) <= kFine.dq());
  CHECK(std::abs(kFine.p(best_j) - p0) <= kFine.dp());
  CHECK(std::abs(rec.field.mass() - 1.0) <= 1e-12);
}

TEST_CASE("inverse validation: angle count, canonical frames, grids") {
  PhaseSpaceField w = make_vacuum(kWide);
  Tomogram few = radon_tomogram(w, uniform_angles(6), kWideX);
  CHECK_THROWS_AS(inverse_tomogram(few, kWide), ValidationError);

  Tomogram scaled =
      forward_tomogram(w, {Frame{2.0, 0.0}, Frame{0.0, 2.0}}, kWideX);
  CHECK_THROWS_AS(inverse_tomogram(scaled, kWide), ValidationError);

  Tomogram a = radon_tomogram(w, uniform_angles(8), kWideX);
  Tomogram b = radon_tomogram(w, uniform_angles(8), XGrid{-6.0, 6.0, 128});
  CHECK_THROWS_AS(merge({a, b}), ValidationError);
  CHECK_NOTHROW(merge({a, a}));
}

TEST_CASE("cat closed form: raw mass is frame-independent") {
  XGrid x{-9.0, 9.0, 512};
  double reference = cat_tomogram_closed_form(x, 0.0, 3.0, 0.0).raw_mass;
  for (double theta : {0.43, kPi / 4, 1.2, kPi / 2}) {
    double mass = cat_tomogram_closed_form(x, theta, 3.0, 0.0).raw_mass;
    CHECK(std::abs(mass - reference) <= 1e-6);
  }
  // the printed closed form carries the separation-suppressed mass
  double r2 = 9.0;
  CHECK(std::abs(reference - std::exp(-r2) * (1.0 - std::exp(-r2))) <= 1e-6);
}

TEST_CASE("cat closed form matches the projected cat Wigner function") {
  PhaseSpaceGrid grid{-9.0, 9.0, -9.0, 9.0, 256, 256};
  XGrid x{-9.0, 9.0, 256};
  PhaseSpaceField cat = make_cat_wigner(grid, 3.0, 0.0);
  for (double theta : {0.0, kPi / 4, kPi / 2}) {
    Tomogram projected = radon_tomogram(cat, {theta}, x);
    CatTomogramRow closed = cat_tomogram_closed_form(x, theta, 3.0, 0.0);
    double sup = 0.0;
    for (int l = 0; l < x.n_x; ++l)
      sup = std::max(sup, std::abs(projected.row(0)[l] - closed.values[l]));
    CHECK(sup <= 5e-3);
  }
}

TEST_CASE("cat closed form fringe spacing at theta = pi/2 is pi/q0") {
  XGrid x{-9.0, 9.0, 1024};
  auto row = cat_tomogram_closed_form(x, kPi / 2, 3.0, 0.0).values;
  std::vector<double> maxima;
  for (int l = 1; l + 1 < x.n_x; ++l) {
    if (std::abs(x.x(l)) > 2.0) continue;
    if (row[l] > row[l - 1] && row[l] > row[l + 1] && row[l] > 0.05)
      maxima.push_back(x.x(l));
  }
  REQUIRE(maxima.size() >= 3);
  double mean_gap = (maxima.back() - maxima.front()) / (maxima.size() - 1);
  CHECK(std::abs(mean_gap - kPi / 3.0) <= 0.05 * kPi / 3.0);
}

TEST_CASE("cat closed form rejects the degenerate neighborhood") {
  XGrid x{-9.0, 9.0, 256};
  CHECK_THROWS_AS(cat_tomogram_closed_form(x, 0.0, 0.5, 0.0), ValidationError);
  CHECK_NOTHROW(cat_tomogram_closed_form(x, 0.0, 0.8, 0.0));
}

TEST_CASE("tomogram invariants are enforced") {
  auto row = gaussian_row(kFineX, 0.0, 0.5);
  CHECK_NOTHROW(Tomogram::checked(kFineX, {Frame{1.0, 0.0}}, row));

  auto leaky = row;
  for (double& v : leaky) v *= 0.9;  // mass 0.9
  CHECK_THROWS_AS(Tomogram::checked(kFineX, {Frame{1.0, 0.0}}, leaky),
                  ValidationError);

  auto negative = row;
  negative[0] -= 1e-6;
  negative[1] += 1e-6;
  CHECK_THROWS_AS(Tomogram::checked(kFineX, {Frame{1.0, 0.0}}, negative),
                  ValidationError);
}
