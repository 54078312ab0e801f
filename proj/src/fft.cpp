#include "biphoton/fft.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "biphoton/errors.hpp"
#include "biphoton/grid.hpp"

namespace biphoton {

FftPlan::FftPlan(std::size_t n) : n_(n) {
  if (!is_power_of_two(n))
    fail(ErrorCode::NonPositiveLength, "FFT size " + std::to_string(n) + " is not a power of two");
  bit_reverse_.resize(n);
  std::size_t log2n = 0;
  while ((std::size_t{1} << log2n) < n) ++log2n;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = 0;
    for (std::size_t b = 0; b < log2n; ++b)
      if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (log2n - 1 - b);
    bit_reverse_[i] = r;
  }
  twiddle_.resize(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double phase = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    twiddle_[k] = cplx(std::cos(phase), std::sin(phase));
  }
}

void FftPlan::transform(cplx* a, bool inverse) const {
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t r = bit_reverse_[i];
    if (i < r) std::swap(a[i], a[r]);
  }
  for (std::size_t len = 2; len <= n_; len <<= 1) {
    const std::size_t step = n_ / len;
    const std::size_t half = len / 2;
    for (std::size_t start = 0; start < n_; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        cplx w = twiddle_[k * step];
        if (inverse) w = std::conj(w);
        const cplx u = a[start + k];
        const cplx v = a[start + k + half] * w;
        a[start + k] = u + v;
        a[start + k + half] = u - v;
      }
    }
  }
  if (inverse) {
    const double scale = 1.0 / static_cast<double>(n_);
    for (std::size_t i = 0; i < n_; ++i) a[i] *= scale;
  }
}

void FftPlan::forward(cplx* data) const { transform(data, false); }
void FftPlan::inverse(cplx* data) const { transform(data, true); }

void fft2d(cplx* a, std::size_t n1, std::size_t n2, bool inverse, Exec exec) {
  const FftPlan row_plan(n2);
  const FftPlan col_plan(n1);
  for_rows(exec, static_cast<std::ptrdiff_t>(n1), [&](std::ptrdiff_t i) {
    cplx* row = a + static_cast<std::size_t>(i) * n2;
    if (inverse)
      row_plan.inverse(row);
    else
      row_plan.forward(row);
  });
  for_rows(exec, static_cast<std::ptrdiff_t>(n2), [&](std::ptrdiff_t j) {
    std::vector<cplx> col(n1);
    for (std::size_t i = 0; i < n1; ++i) col[i] = a[i * n2 + static_cast<std::size_t>(j)];
    if (inverse)
      col_plan.inverse(col.data());
    else
      col_plan.forward(col.data());
    for (std::size_t i = 0; i < n1; ++i) a[i * n2 + static_cast<std::size_t>(j)] = col[i];
  });
}

std::vector<cplx> naive_dft(const std::vector<cplx>& x, bool inverse) {
  const std::size_t n = x.size();
  std::vector<cplx> out(n);
  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t j = 0; j < n; ++j) {
    cplx acc(0.0, 0.0);
    for (std::size_t m = 0; m < n; ++m) {
      const double phase =
          sign * 2.0 * std::numbers::pi * static_cast<double>(j * m % n) / static_cast<double>(n);
      acc += x[m] * cplx(std::cos(phase), std::sin(phase));
    }
    out[j] = inverse ? acc / static_cast<double>(n) : acc;
  }
  return out;
}

}  // namespace biphoton
