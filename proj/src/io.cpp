#include "tomokit/io.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace tomokit {

static_assert(std::endian::native == std::endian::little,
              "file formats are little-endian; big-endian hosts are unsupported");

namespace {

void put_u32(std::ostream& os, std::uint32_t v) {
  os.write(reinterpret_cast<const char*>(&v), 4);
}

void put_f64(std::ostream& os, double v) {
  os.write(reinterpret_cast<const char*>(&v), 8);
}

std::uint32_t get_u32(std::istream& is) {
  std::uint32_t v = 0;
  is.read(reinterpret_cast<char*>(&v), 4);
  return v;
}

double get_f64(std::istream& is) {
  double v = 0;
  is.read(reinterpret_cast<char*>(&v), 8);
  return v;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open for writing: " + path);
  return os;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open for reading: " + path);
  return is;
}

constexpr std::uint32_t kFormatVersion = 1;

}  // namespace

void write_field(const std::string& path, const PhaseSpaceField& field,
                 bool json_sidecar) {
  auto os = open_out(path);
  const auto& g = field.grid();
  os.write("TOMO", 4);
  put_u32(os, kFormatVersion);
  put_u32(os, static_cast<std::uint32_t>(g.n_q));
  put_u32(os, static_cast<std::uint32_t>(g.n_p));
  char kind = static_cast<char>(field.kind());
  os.write(&kind, 1);
  char pad[15] = {};
  os.write(pad, sizeof pad);
  put_f64(os, g.q_min);
  put_f64(os, g.q_max);
  put_f64(os, g.p_min);
  put_f64(os, g.p_max);
  os.write(reinterpret_cast<const char*>(field.values().data()),
           static_cast<std::streamsize>(field.values().size() * 8));
  if (!os) throw IoError("write failed: " + path);
  os.close();

  if (json_sidecar) {
    nlohmann::json j{
        {"magic", "TOMO"},
        {"version", kFormatVersion},
        {"n_q", g.n_q},
        {"n_p", g.n_p},
        {"kind", field.kind() == FieldKind::Wigner ? "wigner" : "classical"},
        {"q_min", g.q_min},
        {"q_max", g.q_max},
        {"p_min", g.p_min},
        {"p_max", g.p_max},
    };
    std::ofstream sidecar(path + ".json", std::ios::trunc);
    if (!sidecar) throw IoError("cannot write sidecar: " + path + ".json");
    sidecar << j.dump(2) << "\n";
  }
}

PhaseSpaceField read_field(const std::string& path) {
  auto is = open_in(path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "TOMO", 4) != 0)
    throw IoError("not a field file (bad magic): " + path);
  std::uint32_t version = get_u32(is);
  if (version != kFormatVersion)
    throw IoError("unsupported field format version in " + path);
  int n_q = static_cast<int>(get_u32(is));
  int n_p = static_cast<int>(get_u32(is));
  char kind_byte = 0;
  is.read(&kind_byte, 1);
  char pad[15];
  is.read(pad, sizeof pad);
  PhaseSpaceGrid g;
  g.n_q = n_q;
  g.n_p = n_p;
  g.q_min = get_f64(is);
  g.q_max = get_f64(is);
  g.p_min = get_f64(is);
  g.p_max = get_f64(is);
  if (!is) throw IoError("truncated field header: " + path);
  if (kind_byte != 0 && kind_byte != 1)
    throw IoError("bad field kind byte in " + path);
  g.validate();
  std::vector<double> values(g.size());
  is.read(reinterpret_cast<char*>(values.data()),
          static_cast<std::streamsize>(values.size() * 8));
  if (!is) throw IoError("truncated field data: " + path);
  for (double v : values)
    if (!std::isfinite(v)) throw IoError("non-finite field data in " + path);
  return PhaseSpaceField::unchecked(g, static_cast<FieldKind>(kind_byte),
                                    std::move(values));
}

void write_tomogram(const std::string& path, const Tomogram& tomogram) {
  auto os = open_out(path);
  os.write("TGRM", 4);
  put_u32(os, kFormatVersion);
  put_u32(os, static_cast<std::uint32_t>(tomogram.frame_count()));
  put_u32(os, static_cast<std::uint32_t>(tomogram.x().n_x));
  put_f64(os, tomogram.x().x_min);
  put_f64(os, tomogram.x().x_max);
  for (const Frame& f : tomogram.frames()) {
    put_f64(os, f.mu);
    put_f64(os, f.nu);
  }
  os.write(reinterpret_cast<const char*>(tomogram.values().data()),
           static_cast<std::streamsize>(tomogram.values().size() * 8));
  if (!os) throw IoError("write failed: " + path);
}

Tomogram read_tomogram(const std::string& path) {
  auto is = open_in(path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "TGRM", 4) != 0)
    throw IoError("not a tomogram file (bad magic): " + path);
  if (get_u32(is) != kFormatVersion)
    throw IoError("unsupported tomogram format version in " + path);
  int n_frames = static_cast<int>(get_u32(is));
  XGrid x;
  x.n_x = static_cast<int>(get_u32(is));
  x.x_min = get_f64(is);
  x.x_max = get_f64(is);
  if (!is || n_frames < 1) throw IoError("bad tomogram header: " + path);
  x.validate();
  std::vector<Frame> frames(n_frames);
  for (Frame& f : frames) {
    f.mu = get_f64(is);
    f.nu = get_f64(is);
  }
  std::vector<double> values(static_cast<std::size_t>(n_frames) * x.n_x);
  is.read(reinterpret_cast<char*>(values.data()),
          static_cast<std::streamsize>(values.size() * 8));
  if (!is) throw IoError("truncated tomogram data: " + path);
  for (double v : values)
    if (!std::isfinite(v)) throw IoError("non-finite tomogram data in " + path);
  return Tomogram::unchecked(x, std::move(frames), std::move(values));
}

void write_tomogram_csv(const std::string& path, const Tomogram& tomogram) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw IoError("cannot open for writing: " + path);
  os << "theta,x,w\n";
  os.precision(17);
  for (int f = 0; f < tomogram.frame_count(); ++f) {
    double theta = canonicalize(tomogram.frames()[f]).theta;
    auto row = tomogram.row(f);
    for (int l = 0; l < tomogram.x().n_x; ++l)
      os << theta << ',' << tomogram.x().x(l) << ',' << row[l] << '\n';
  }
  if (!os) throw IoError("write failed: " + path);
}

FrameDistribution read_frame_distribution_csv(const std::string& path) {
  auto is = open_in(path);
  std::vector<std::pair<double, double>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double theta, p;
    if (!(ls >> theta >> p)) continue;  // tolerated header / comment line
    rows.emplace_back(theta, p);
  }
  if (rows.size() < 2)
    throw IoError("frame-distribution CSV has fewer than 2 samples: " + path);
  std::vector<double> density(rows.size());
  // samples must sit on the midpoint grid theta_k = (k + 1/2) pi / n
  int n = static_cast<int>(rows.size());
  for (int k = 0; k < n; ++k) {
    double expected = (k + 0.5) * kPi / n;
    if (std::abs(rows[k].first - expected) > 1e-6)
      throw IoError("frame-distribution CSV is not on the uniform midpoint "
                    "angle grid: " + path);
    density[k] = rows[k].second;
  }
  return FrameDistribution::from_samples(std::move(density));
}

void write_frame_distribution_csv(const std::string& path,
                                  const FrameDistribution& dist) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw IoError("cannot open for writing: " + path);
  os << "theta,P\n";
  os.precision(17);
  for (int k = 0; k < dist.size(); ++k)
    os << dist.theta(k) << ',' << dist.density()[k] << '\n';
  if (!os) throw IoError("write failed: " + path);
}

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
  auto is = open_in(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    std::vector<double> row;
    double v;
    while (ls >> v) row.push_back(v);
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw IoError("matrix CSV is empty: " + path);
  std::size_t cols = rows.front().size();
  for (const auto& r : rows)
    if (r.size() != cols)
      throw IoError("matrix CSV has ragged rows: " + path);
  Eigen::MatrixXd m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  return m;
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw IoError("cannot open for writing: " + path);
  os.precision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << m(i, j);
    }
    os << '\n';
  }
  if (!os) throw IoError("write failed: " + path);
}

}  // namespace tomokit
