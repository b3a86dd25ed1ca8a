#include "afc/fft.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace afc {

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Iterative Cooley-Tukey with a per-call twiddle table (no recurrence drift,
// no shared mutable state). Kept scalar on purpose: the butterflies are
// sequentially dependent across stages and the transform is a small slice of
// runtime next to the per-point physics kernels.
void fft_pow2(std::complex<double>* data, std::size_t n, int sign) {
  if (n == 0) return;
  if (n & (n - 1))
    throw std::invalid_argument("fft_pow2: length must be a power of two");
  if (n == 1) return;

  // bit-reversal permutation
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }

  const double dir = (sign >= 0) ? 1.0 : -1.0;
  std::vector<std::complex<double>> tw(n / 2);
  const double step = dir * 2.0 * M_PI / static_cast<double>(n);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double a = step * static_cast<double>(k);
    tw[k] = std::complex<double>(std::cos(a), std::sin(a));
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len >> 1;
    const std::size_t stride = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const std::complex<double> w = tw[k * stride];
        const std::complex<double> u = data[i + k];
        const std::complex<double> v = data[i + k + half] * w;
        data[i + k] = u + v;
        data[i + k + half] = u - v;
      }
    }
  }
}

}  // namespace afc
