#include "tomokit/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace tomokit {

namespace {

std::mutex g_plan_mutex;

// Plans cached forever, keyed by (size, sign, in-place).  FFTW_ESTIMATE
// keeps the chosen algorithm deterministic run to run; FFTW_UNALIGNED lets
// plans execute on arbitrary std::vector storage via fftw_execute_dft.
fftw_plan plan_for(int n, int sign, bool in_place) {
  static std::map<std::tuple<int, int, bool>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto key = std::make_tuple(n, sign, in_place);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<cplx> a(n), b(in_place ? 0 : n);
  auto* src = reinterpret_cast<fftw_complex*>(a.data());
  auto* dst = in_place ? src : reinterpret_cast<fftw_complex*>(b.data());
  fftw_plan p =
      fftw_plan_dft_1d(n, src, dst, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!p) throw std::runtime_error("fftw plan creation failed");
  cache.emplace(key, p);
  return p;
}

void execute(int n, int sign, const cplx* in, cplx* out) {
  fftw_plan p = plan_for(n, sign, in == out);
  // fftw_execute_dft leaves the input untouched for out-of-place c2c plans.
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

}  // namespace

void fft_forward(const cplx* in, cplx* out, int n) {
  execute(n, FFTW_FORWARD, in, out);
}

void fft_backward(const cplx* in, cplx* out, int n) {
  execute(n, FFTW_BACKWARD, in, out);
}

void fft_forward(std::vector<cplx>& inout) {
  execute(static_cast<int>(inout.size()), FFTW_FORWARD, inout.data(),
          inout.data());
}

void fft_backward(std::vector<cplx>& inout) {
  execute(static_cast<int>(inout.size()), FFTW_BACKWARD, inout.data(),
          inout.data());
}

int next_fast_fft_size(int n) {
  if (n < 1) return 1;
  for (int m = n;; ++m) {
    int r = m;
    for (int f : {2, 3, 5})
      while (r % f == 0) r /= f;
    if (r == 1) return m;
  }
}

ChirpZ::ChirpZ(int n_in, int n_out, int n0, double phi)
    : n_in_(n_in), n_out_(n_out), n0_(n0), phi_(phi) {
  conv_size_ = next_fast_fft_size(n_in_ + n_out_ - 1);

  // X_t = sum_j a_j e^{-i phi (n0+t) j}
  //     = e^{-i phi t^2/2} sum_j [a_j e^{-i phi n0 j} e^{-i phi j^2/2}]
  //                              e^{+i phi (t-j)^2/2}
  input_chirp_.resize(n_in_);
  for (int j = 0; j < n_in_; ++j) {
    double arg = -phi_ * (n0_ * static_cast<double>(j) +
                          0.5 * static_cast<double>(j) * j);
    input_chirp_[j] = std::polar(1.0, arg);
  }

  output_chirp_.resize(n_out_);
  for (int t = 0; t < n_out_; ++t)
    output_chirp_[t] =
        std::polar(1.0, -0.5 * phi_ * static_cast<double>(t) * t);

  // Bluestein kernel v_m = e^{+i phi m^2/2} for m in (-n_in, n_out),
  // wrapped into a circular buffer of length conv_size_.
  std::vector<cplx> kernel(conv_size_, cplx(0.0, 0.0));
  for (int m = -(n_in_ - 1); m < n_out_; ++m) {
    double arg = 0.5 * phi_ * static_cast<double>(m) * m;
    int idx = m >= 0 ? m : m + conv_size_;
    kernel[idx] = std::polar(1.0, arg);
  }
  kernel_fft_.resize(conv_size_);
  fft_forward(kernel.data(), kernel_fft_.data(), conv_size_);
}

void ChirpZ::run(const cplx* in, cplx* out) const {
  std::vector<cplx> buf(conv_size_, cplx(0.0, 0.0));
  for (int j = 0; j < n_in_; ++j) buf[j] = in[j] * input_chirp_[j];
  fft_forward(buf);
  for (int m = 0; m < conv_size_; ++m) buf[m] *= kernel_fft_[m];
  fft_backward(buf);
  double scale = 1.0 / conv_size_;
  for (int t = 0; t < n_out_; ++t) out[t] = buf[t] * output_chirp_[t] * scale;
}

}  // namespace tomokit
