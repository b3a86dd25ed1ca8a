// Scalar reference kernels. These define the semantics; SIMD variants must
// match them (bit-exact for the pure-arithmetic ones, few-ulp for exp/sincos
// based ones and reductions). Keep the operation order here boring and fixed.

#include <cmath>
#include <cstddef>

#include "afc/kernels.hpp"

namespace afc::kernels {
namespace {

constexpr double kFourLn2 = 2.772588722239781;  // 4 ln 2

inline double peak_weight(const double* weights, std::size_t j, double amp) {
  return weights ? weights[j] : amp;
}

void accum_peaks_gaussian_s(double* out, const double* nu, std::size_t n,
                            const double* centers, const double* weights,
                            std::size_t m, double fwhm, double amp) {
  const double inv_w = 1.0 / fwhm;
  for (std::size_t j = 0; j < m; ++j) {
    const double c = centers[j];
    const double wj = peak_weight(weights, j, amp);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = (nu[i] - c) * inv_w;
      out[i] += wj * std::exp(-kFourLn2 * x * x);
    }
  }
}

void accum_peaks_lorentzian_s(double* out, const double* nu, std::size_t n,
                              const double* centers, const double* weights,
                              std::size_t m, double fwhm, double amp) {
  const double inv_w = 1.0 / fwhm;
  for (std::size_t j = 0; j < m; ++j) {
    const double c = centers[j];
    const double wj = peak_weight(weights, j, amp);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = (nu[i] - c) * inv_w;
      out[i] += wj / (1.0 + 4.0 * x * x);
    }
  }
}

void accum_peaks_square_s(double* out, const double* nu, std::size_t n,
                          const double* centers, const double* weights,
                          std::size_t m, double fwhm, double amp) {
  const double half = 0.5 * fwhm;
  for (std::size_t j = 0; j < m; ++j) {
    const double c = centers[j];
    const double wj = peak_weight(weights, j, amp);
    for (std::size_t i = 0; i < n; ++i) {
      const double dx = nu[i] - c;
      if (dx >= -half && dx <= half) out[i] += wj;
    }
  }
}

void lorentzian_line_s(double* out, const double* nu, std::size_t n,
                       double center, double fwhm, double amp) {
  const double hw = 0.5 * fwhm;
  const double hw2 = hw * hw;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = nu[i] - center;
    out[i] += amp * hw2 / (dx * dx + hw2);
  }
}

void complex_exp_field_s(cplx* out, const double* d, const double* phase,
                         std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double mag = std::exp(-0.5 * d[i]);
    out[i] = cplx(mag * std::cos(phase[i]), mag * std::sin(phase[i]));
  }
}

void cavity_reflection_s(cplx* r, cplx* t, const cplx* a, std::size_t n,
                         double r1, double r2, double tc) {
  // explicit real arithmetic so the SIMD paths can reproduce it exactly
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double a2r = ar * ar - ai * ai;
    const double a2i = ar * ai + ai * ar;
    const double nr = -r1 + r2 * a2r;
    const double ni = r2 * a2i;
    const double dr = 1.0 - r1 * r2 * a2r;
    const double di = -(r1 * r2) * a2i;
    const double den = dr * dr + di * di;
    r[i] = cplx((nr * dr + ni * di) / den, (ni * dr - nr * di) / den);
    if (t) {
      const double tr = tc * ar, ti = tc * ai;
      t[i] = cplx((tr * dr + ti * di) / den, (ti * dr - tr * di) / den);
    }
  }
}

void rotate90_s(cplx* buf, std::size_t i0, std::size_t i1, int sign) {
  if (sign >= 0) {
    for (std::size_t i = i0; i < i1; ++i)
      buf[i] = cplx(-buf[i].imag(), buf[i].real());
  } else {
    for (std::size_t i = i0; i < i1; ++i)
      buf[i] = cplx(buf[i].imag(), -buf[i].real());
  }
}

void abs2_s(double* out, const cplx* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    out[i] = x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
}

double energy_s(const cplx* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return acc;
}

void group_index_stencil_s(double* ng, const double* dn, const double* nu,
                           std::size_t n, double n_bg, double nu0,
                           double inv_2dnu) {
  for (std::size_t i = 1; i + 1 < n; ++i) {
    ng[i] = n_bg + dn[i] + (nu0 + nu[i]) * ((dn[i + 1] - dn[i - 1]) * inv_2dnu);
  }
}

void pump_window_s(double* src_g, double* tgt_e, const double* det,
                   std::size_t n, double lo, double hi, double p) {
  const double keep = 1.0 - p;
  for (std::size_t i = 0; i < n; ++i) {
    if (det[i] >= lo && det[i] <= hi) {
      tgt_e[i] += p * src_g[i];
      src_g[i] *= keep;
    }
  }
}

void relax_excited_s(double* g1, double* g2, double* g3, double* e1,
                     double* e2, double* e3, std::size_t n, const double* b) {
  for (std::size_t i = 0; i < n; ++i) {
    const double p1 = e1[i], p2 = e2[i], p3 = e3[i];
    g1[i] += b[0] * p1 + b[3] * p2 + b[6] * p3;
    g2[i] += b[1] * p1 + b[4] * p2 + b[7] * p3;
    g3[i] += b[2] * p1 + b[5] * p2 + b[8] * p3;
    e1[i] = 0.0;
    e2[i] = 0.0;
    e3[i] = 0.0;
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable t = {
      accum_peaks_gaussian_s, accum_peaks_lorentzian_s, accum_peaks_square_s,
      lorentzian_line_s,      complex_exp_field_s,      cavity_reflection_s,
      rotate90_s,             abs2_s,                   energy_s,
      group_index_stencil_s,  pump_window_s,            relax_excited_s,
  };
  return t;
}

}  // namespace afc::kernels
