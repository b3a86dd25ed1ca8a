// NEON (aarch64) variants for the pure-arithmetic kernels; the transcendental
// ones fall back to the scalar reference on ARM. float64x2 lanes, no FMA
// (vmulq/vaddq only) so results stay bit-identical to the scalar path.

#if defined(__aarch64__)

#include <arm_neon.h>

#include <cmath>
#include <cstddef>

#include "afc/kernels.hpp"

namespace afc::kernels {

const KernelTable& scalar_table();

namespace {

void accum_peaks_lorentzian_n(double* out, const double* nu, std::size_t n,
                              const double* centers, const double* weights,
                              std::size_t m, double fwhm, double amp) {
  const double inv_w = 1.0 / fwhm;
  const float64x2_t vinv = vdupq_n_f64(inv_w);
  const float64x2_t vone = vdupq_n_f64(1.0);
  const float64x2_t vfour = vdupq_n_f64(4.0);
  for (std::size_t j = 0; j < m; ++j) {
    const double c = centers[j];
    const double wj = weights ? weights[j] : amp;
    const float64x2_t vc = vdupq_n_f64(c);
    const float64x2_t vw = vdupq_n_f64(wj);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
      const float64x2_t x = vmulq_f64(vsubq_f64(vld1q_f64(nu + i), vc), vinv);
      const float64x2_t den = vaddq_f64(vone, vmulq_f64(vmulq_f64(vfour, x), x));
      vst1q_f64(out + i, vaddq_f64(vld1q_f64(out + i), vdivq_f64(vw, den)));
    }
    for (; i < n; ++i) {
      const double x = (nu[i] - c) * inv_w;
      out[i] += wj / (1.0 + 4.0 * x * x);
    }
  }
}

void accum_peaks_square_n(double* out, const double* nu, std::size_t n,
                          const double* centers, const double* weights,
                          std::size_t m, double fwhm, double amp) {
  const double half = 0.5 * fwhm;
  for (std::size_t j = 0; j < m; ++j) {
    const double c = centers[j];
    const double wj = weights ? weights[j] : amp;
    const float64x2_t vc = vdupq_n_f64(c);
    const float64x2_t vlo = vdupq_n_f64(-half);
    const float64x2_t vhi = vdupq_n_f64(half);
    const float64x2_t vw = vdupq_n_f64(wj);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
      const float64x2_t dx = vsubq_f64(vld1q_f64(nu + i), vc);
      const uint64x2_t in =
          vandq_u64(vcgeq_f64(dx, vlo), vcleq_f64(dx, vhi));
      const float64x2_t add = vreinterpretq_f64_u64(
          vandq_u64(in, vreinterpretq_u64_f64(vw)));
      vst1q_f64(out + i, vaddq_f64(vld1q_f64(out + i), add));
    }
    for (; i < n; ++i) {
      const double dx = nu[i] - c;
      if (dx >= -half && dx <= half) out[i] += wj;
    }
  }
}

void lorentzian_line_n(double* out, const double* nu, std::size_t n,
                       double center, double fwhm, double amp) {
  const double hw = 0.5 * fwhm;
  const double hw2 = hw * hw;
  const float64x2_t vc = vdupq_n_f64(center);
  const float64x2_t vh = vdupq_n_f64(hw2);
  const float64x2_t va = vdupq_n_f64(amp);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t dx = vsubq_f64(vld1q_f64(nu + i), vc);
    const float64x2_t den = vaddq_f64(vmulq_f64(dx, dx), vh);
    vst1q_f64(out + i, vaddq_f64(vld1q_f64(out + i),
                                 vdivq_f64(vmulq_f64(va, vh), den)));
  }
  for (; i < n; ++i) {
    const double dx = nu[i] - center;
    out[i] += amp * hw2 / (dx * dx + hw2);
  }
}

void cavity_reflection_n(cplx* r, cplx* t, const cplx* a, std::size_t n,
                         double r1, double r2, double tc) {
  const float64x2_t vr1 = vdupq_n_f64(r1);
  const float64x2_t vr2 = vdupq_n_f64(r2);
  const float64x2_t vr12 = vdupq_n_f64(r1 * r2);
  const float64x2_t vtc = vdupq_n_f64(tc);
  const float64x2_t vone = vdupq_n_f64(1.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2x2_t pair = vld2q_f64(reinterpret_cast<const double*>(a + i));
    const float64x2_t ar = pair.val[0], ai = pair.val[1];
    const float64x2_t a2r = vsubq_f64(vmulq_f64(ar, ar), vmulq_f64(ai, ai));
    const float64x2_t a2i = vaddq_f64(vmulq_f64(ar, ai), vmulq_f64(ai, ar));
    const float64x2_t nr = vaddq_f64(vnegq_f64(vr1), vmulq_f64(vr2, a2r));
    const float64x2_t ni = vmulq_f64(vr2, a2i);
    const float64x2_t dr = vsubq_f64(vone, vmulq_f64(vr12, a2r));
    const float64x2_t di = vnegq_f64(vmulq_f64(vr12, a2i));
    const float64x2_t den = vaddq_f64(vmulq_f64(dr, dr), vmulq_f64(di, di));
    float64x2x2_t res;
    res.val[0] = vdivq_f64(vaddq_f64(vmulq_f64(nr, dr), vmulq_f64(ni, di)), den);
    res.val[1] = vdivq_f64(vsubq_f64(vmulq_f64(ni, dr), vmulq_f64(nr, di)), den);
    vst2q_f64(reinterpret_cast<double*>(r + i), res);
    if (t) {
      const float64x2_t tr = vmulq_f64(vtc, ar);
      const float64x2_t ti = vmulq_f64(vtc, ai);
      float64x2x2_t tw;
      tw.val[0] = vdivq_f64(vaddq_f64(vmulq_f64(tr, dr), vmulq_f64(ti, di)), den);
      tw.val[1] = vdivq_f64(vsubq_f64(vmulq_f64(ti, dr), vmulq_f64(tr, di)), den);
      vst2q_f64(reinterpret_cast<double*>(t + i), tw);
    }
  }
  for (; i < n; ++i) {
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

void rotate90_n(cplx* buf, std::size_t i0, std::size_t i1, int sign) {
  double* q = reinterpret_cast<double*>(buf);
  std::size_t i = i0;
  for (; i < i1; ++i) {
    const float64x2_t v = vld1q_f64(q + 2 * i);
    const float64x2_t sw = vextq_f64(v, v, 1);  // [im, re]
    const float64x2_t res =
        (sign >= 0) ? vsetq_lane_f64(-vgetq_lane_f64(sw, 0), sw, 0)
                    : vsetq_lane_f64(-vgetq_lane_f64(sw, 1), sw, 1);
    vst1q_f64(q + 2 * i, res);
  }
}

void abs2_n(double* out, const cplx* x, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2x2_t pair = vld2q_f64(reinterpret_cast<const double*>(x + i));
    vst1q_f64(out + i, vaddq_f64(vmulq_f64(pair.val[0], pair.val[0]),
                                 vmulq_f64(pair.val[1], pair.val[1])));
  }
  for (; i < n; ++i)
    out[i] = x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
}

double energy_n(const cplx* x, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  const double* q = reinterpret_cast<const double*>(x);
  std::size_t i = 0;
  for (; i + 1 <= n; i += 1) {
    const float64x2_t v = vld1q_f64(q + 2 * i);
    acc = vaddq_f64(acc, vmulq_f64(v, v));
  }
  double total = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  return total;
}

void group_index_stencil_n(double* ng, const double* dn, const double* nu,
                           std::size_t n, double n_bg, double nu0,
                           double inv_2dnu) {
  if (n < 2) return;
  const float64x2_t vbg = vdupq_n_f64(n_bg);
  const float64x2_t v0 = vdupq_n_f64(nu0);
  const float64x2_t vinv = vdupq_n_f64(inv_2dnu);
  std::size_t i = 1;
  for (; i + 2 <= n - 1; i += 2) {
    const float64x2_t diff = vmulq_f64(
        vsubq_f64(vld1q_f64(dn + i + 1), vld1q_f64(dn + i - 1)), vinv);
    const float64x2_t nuabs = vaddq_f64(v0, vld1q_f64(nu + i));
    vst1q_f64(ng + i, vaddq_f64(vaddq_f64(vbg, vld1q_f64(dn + i)),
                                vmulq_f64(nuabs, diff)));
  }
  for (; i + 1 < n; ++i)
    ng[i] = n_bg + dn[i] + (nu0 + nu[i]) * ((dn[i + 1] - dn[i - 1]) * inv_2dnu);
}

void pump_window_n(double* src_g, double* tgt_e, const double* det,
                   std::size_t n, double lo, double hi, double p) {
  const double keep = 1.0 - p;
  const float64x2_t vlo = vdupq_n_f64(lo);
  const float64x2_t vhi = vdupq_n_f64(hi);
  const float64x2_t vp = vdupq_n_f64(p);
  const float64x2_t vkeep = vdupq_n_f64(keep);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t dv = vld1q_f64(det + i);
    const uint64x2_t in = vandq_u64(vcgeq_f64(dv, vlo), vcleq_f64(dv, vhi));
    const float64x2_t src = vld1q_f64(src_g + i);
    const float64x2_t tgt = vld1q_f64(tgt_e + i);
    const float64x2_t moved = vreinterpretq_f64_u64(
        vandq_u64(in, vreinterpretq_u64_f64(vmulq_f64(vp, src))));
    vst1q_f64(tgt_e + i, vaddq_f64(tgt, moved));
    const float64x2_t kept = vmulq_f64(src, vkeep);
    vst1q_f64(src_g + i, vbslq_f64(in, kept, src));
  }
  for (; i < n; ++i) {
    if (det[i] >= lo && det[i] <= hi) {
      tgt_e[i] += p * src_g[i];
      src_g[i] *= keep;
    }
  }
}

void relax_excited_n(double* g1, double* g2, double* g3, double* e1,
                     double* e2, double* e3, std::size_t n, const double* b) {
  const float64x2_t zero = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t p1 = vld1q_f64(e1 + i);
    const float64x2_t p2 = vld1q_f64(e2 + i);
    const float64x2_t p3 = vld1q_f64(e3 + i);
    vst1q_f64(g1 + i, vaddq_f64(vld1q_f64(g1 + i),
        vaddq_f64(vaddq_f64(vmulq_f64(vdupq_n_f64(b[0]), p1),
                            vmulq_f64(vdupq_n_f64(b[3]), p2)),
                  vmulq_f64(vdupq_n_f64(b[6]), p3))));
    vst1q_f64(g2 + i, vaddq_f64(vld1q_f64(g2 + i),
        vaddq_f64(vaddq_f64(vmulq_f64(vdupq_n_f64(b[1]), p1),
                            vmulq_f64(vdupq_n_f64(b[4]), p2)),
                  vmulq_f64(vdupq_n_f64(b[7]), p3))));
    vst1q_f64(g3 + i, vaddq_f64(vld1q_f64(g3 + i),
        vaddq_f64(vaddq_f64(vmulq_f64(vdupq_n_f64(b[2]), p1),
                            vmulq_f64(vdupq_n_f64(b[5]), p2)),
                  vmulq_f64(vdupq_n_f64(b[8]), p3))));
    vst1q_f64(e1 + i, zero);
    vst1q_f64(e2 + i, zero);
    vst1q_f64(e3 + i, zero);
  }
  for (; i < n; ++i) {
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

const KernelTable& neon_table() {
  static const KernelTable t = [] {
    KernelTable k = scalar_table();  // transcendental kernels stay scalar
    k.accum_peaks_lorentzian = accum_peaks_lorentzian_n;
    k.accum_peaks_square = accum_peaks_square_n;
    k.lorentzian_line = lorentzian_line_n;
    k.cavity_reflection = cavity_reflection_n;
    k.rotate90 = rotate90_n;
    k.abs2 = abs2_n;
    k.energy = energy_n;
    k.group_index_stencil = group_index_stencil_n;
    k.pump_window = pump_window_n;
    k.relax_excited = relax_excited_n;
    return k;
  }();
  return t;
}

}  // namespace afc::kernels

#endif  // __aarch64__
