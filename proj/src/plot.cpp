#include "tomokit/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <vector>

namespace tomokit {

namespace {

struct Rgb {
  unsigned char r = 0, g = 0, b = 0;
};

class Canvas {
 public:
  Canvas(int w, int h, Rgb fill = {255, 255, 255})
      : w_(w), h_(h), px_(static_cast<std::size_t>(w) * h, fill) {}

  void set(int x, int y, Rgb c) {
    if (x < 0 || y < 0 || x >= w_ || y >= h_) return;
    px_[static_cast<std::size_t>(y) * w_ + x] = c;
  }

  void vline(int x, int y0, int y1, Rgb c) {
    if (y0 > y1) std::swap(y0, y1);
    for (int y = y0; y <= y1; ++y) set(x, y, c);
  }

  void write_ppm(const std::string& path) const {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open for writing: " + path);
    os << "P6\n" << w_ << ' ' << h_ << "\n255\n";
    for (const Rgb& p : px_) {
      os.put(static_cast<char>(p.r));
      os.put(static_cast<char>(p.g));
      os.put(static_cast<char>(p.b));
    }
    if (!os) throw IoError("write failed: " + path);
  }

 private:
  int w_, h_;
  std::vector<Rgb> px_;
};

Rgb diverging(double t) {
  // t in [-1, 1]: blue -> white -> red
  t = std::clamp(t, -1.0, 1.0);
  auto ch = [](double v) {
    return static_cast<unsigned char>(std::lround(255.0 * std::clamp(v, 0.0, 1.0)));
  };
  if (t < 0.0) return Rgb{ch(1.0 + t), ch(1.0 + t), 255};
  return Rgb{255, ch(1.0 - t), ch(1.0 - t)};
}

Rgb sequential(double t) {
  t = std::clamp(t, 0.0, 1.0);
  auto v = static_cast<unsigned char>(std::lround(255.0 * (1.0 - t)));
  return Rgb{v, v, v};
}

const Rgb kRowColors[] = {
    {31, 119, 180}, {255, 127, 14}, {44, 160, 44},  {214, 39, 40},
    {148, 103, 189}, {140, 86, 75}, {227, 119, 194}, {127, 127, 127},
};

}  // namespace

void plot_field_heatmap(const std::string& path, const PhaseSpaceField& field,
                        int scale) {
  if (scale < 1) throw ValidationError("plot scale must be >= 1");
  const auto& g = field.grid();
  Canvas canvas(g.n_q * scale, g.n_p * scale);
  double hi = std::max(std::abs(field.max_value()), std::abs(field.min_value()));
  if (hi == 0.0) hi = 1.0;
  bool wigner = field.kind() == FieldKind::Wigner;
  for (int i = 0; i < g.n_q; ++i) {
    for (int j = 0; j < g.n_p; ++j) {
      double v = field.at(i, j);
      Rgb c = wigner ? diverging(v / hi) : sequential(v / hi);
      // q runs along x, p upward along y
      for (int sx = 0; sx < scale; ++sx)
        for (int sy = 0; sy < scale; ++sy)
          canvas.set(i * scale + sx, (g.n_p - 1 - j) * scale + sy, c);
    }
  }
  canvas.write_ppm(path);
}

void plot_tomogram_rows(const std::string& path, const Tomogram& tomogram,
                        int width, int height) {
  if (width < 64 || height < 64)
    throw ValidationError("plot size too small");
  Canvas canvas(width, height);
  double hi = 0.0;
  for (double v : tomogram.values()) hi = std::max(hi, v);
  if (hi == 0.0) hi = 1.0;
  const int margin = 8;
  const int plot_h = height - 2 * margin;
  const int plot_w = width - 2 * margin;
  // baseline
  for (int x = margin; x < margin + plot_w; ++x)
    canvas.set(x, height - margin, Rgb{200, 200, 200});
  int n_x = tomogram.x().n_x;
  for (int f = 0; f < tomogram.frame_count(); ++f) {
    Rgb color = kRowColors[f % (sizeof kRowColors / sizeof kRowColors[0])];
    auto row = tomogram.row(f);
    int prev_y = -1;
    for (int px = 0; px < plot_w; ++px) {
      double u = static_cast<double>(px) / (plot_w - 1) * (n_x - 1);
      int l = static_cast<int>(u);
      double frac = u - l;
      double v = l + 1 < n_x ? row[l] * (1 - frac) + row[l + 1] * frac : row[l];
      int y = height - margin -
              static_cast<int>(std::lround(v / hi * (plot_h - 1)));
      if (prev_y >= 0)
        canvas.vline(margin + px, prev_y, y, color);
      else
        canvas.set(margin + px, y, color);
      prev_y = y;
    }
  }
  canvas.write_ppm(path);
}

}  // namespace tomokit
