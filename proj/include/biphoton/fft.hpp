#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "biphoton/exec.hpp"

namespace biphoton {

using cplx = std::complex<double>;

/// Radix-2 DFT plan for a fixed power-of-two size. Twiddle factors are precomputed
/// once; execution is a plain serial butterfly pass, so results do not depend on
/// thread count no matter how many rows run concurrently.
///
/// Convention: forward applies X_j = sum_m x_m exp(-2*pi*i*j*m/n) (no scaling),
/// inverse applies x_m = (1/n) sum_j X_j exp(+2*pi*i*j*m/n); inverse(forward(x)) == x.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);

  std::size_t size() const { return n_; }

  void forward(cplx* data) const;
  void inverse(cplx* data) const;

 private:
  void transform(cplx* data, bool inverse) const;

  std::size_t n_;
  std::vector<std::size_t> bit_reverse_;
  std::vector<cplx> twiddle_;  // exp(-2*pi*i*k/n) for k in [0, n/2)
};

/// Reference O(n^2) DFT with the same convention; used only to validate FftPlan.
std::vector<cplx> naive_dft(const std::vector<cplx>& x, bool inverse);

/// 2D transform of a row-major n1 x n2 array: 1D transforms along rows, then along
/// columns. Each 1D transform runs serially; rows/columns may run on different
/// threads, which cannot change the result.
void fft2d(cplx* a, std::size_t n1, std::size_t n2, bool inverse, Exec exec);

}  // namespace biphoton
