#ifndef TOMOKIT_FFT_HPP
#define TOMOKIT_FFT_HPP

#include <complex>
#include <vector>

namespace tomokit {

using cplx = std::complex<double>;

// Thin wrapper over FFTW double-precision c2c transforms.  Plans are cached
// per (size, direction), created with FFTW_ESTIMATE for run-to-run
// determinism, and executed through the new-array interface so concurrent
// calls from worker threads are safe.
void fft_forward(const cplx* in, cplx* out, int n);   // sum x_j e^{-2pi i jk/n}
void fft_backward(const cplx* in, cplx* out, int n);  // unnormalized inverse

void fft_forward(std::vector<cplx>& inout);
void fft_backward(std::vector<cplx>& inout);

// Smallest size >= n whose factors are all in {2, 3, 5}.
int next_fast_fft_size(int n);

// Chirp-Z evaluation of X_t = sum_{j<n_in} a_j exp(-i phi (n0 + t) j) for
// t = 0..n_out-1, via Bluestein's algorithm.  Exact (to roundoff) for
// arbitrary real phi, so spectra can be sampled off the DFT bins without
// interpolation error.  Reusable across calls with the same geometry.
class ChirpZ {
 public:
  ChirpZ(int n_in, int n_out, int n0, double phi);

  void run(const cplx* in, cplx* out) const;

  int input_size() const { return n_in_; }
  int output_size() const { return n_out_; }

 private:
  int n_in_, n_out_, n0_;
  double phi_;
  int conv_size_ = 0;
  std::vector<cplx> input_chirp_;   // applied to a_j before convolution
  std::vector<cplx> output_chirp_;  // applied after convolution
  std::vector<cplx> kernel_fft_;    // FFT of the Bluestein kernel
};

}  // namespace tomokit

#endif
