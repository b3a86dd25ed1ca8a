#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace afc {

// In-place unnormalized radix-2 DFT, power-of-two length:
//   sign=+1:  y[m] = sum_k x[k] e^{+2*pi*i*m*k/n}
//   sign=-1:  y[m] = sum_k x[k] e^{-2*pi*i*m*k/n}
// Twiddles are computed per call (pure function, thread-safe).
void fft_pow2(std::complex<double>* data, std::size_t n, int sign);

inline void fft_pow2(std::vector<std::complex<double>>& v, int sign) {
  fft_pow2(v.data(), v.size(), sign);
}

std::size_t next_pow2(std::size_t n);

}  // namespace afc
