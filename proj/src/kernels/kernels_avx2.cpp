// AVX2 kernel variants. This TU is compiled with -mavx2 (and the global
// -ffp-contract=off); nothing here uses FMA, so the pure-arithmetic kernels
// reproduce the scalar reference bit for bit. The exp/sincos polynomials are
// the classic Cephes/FDLIBM double-precision kernels (~1 ulp on the argument
// ranges the physics produces; phases are pre-reduced to O(1) rad upstream).

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include <cmath>
#include <cstddef>

#include "afc/kernels.hpp"

namespace afc::kernels {
namespace {

constexpr double kFourLn2 = 2.772588722239781;

// ---------------- vector math ---------------- //

inline __m256d vexp_pd(__m256d x) {
  const __m256d hi = _mm256_set1_pd(708.0);
  const __m256d lo = _mm256_set1_pd(-708.0);
  x = _mm256_min_pd(_mm256_max_pd(x, lo), hi);

  const __m256d log2e = _mm256_set1_pd(1.4426950408889634074);
  const __m256d kd = _mm256_round_pd(_mm256_mul_pd(x, log2e),
                                     _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  // Cody-Waite: r = x - k ln2, split constant
  const __m256d c1 = _mm256_set1_pd(6.93145751953125e-1);
  const __m256d c2 = _mm256_set1_pd(1.42860682030941723212e-6);
  __m256d r = _mm256_sub_pd(x, _mm256_mul_pd(kd, c1));
  r = _mm256_sub_pd(r, _mm256_mul_pd(kd, c2));

  // exp(r) = 1 + 2 r P(r^2) / (Q(r^2) - r P(r^2))   (Cephes exp.c)
  const __m256d z = _mm256_mul_pd(r, r);
  __m256d p = _mm256_set1_pd(1.26177193074810590878e-4);
  p = _mm256_add_pd(_mm256_mul_pd(p, z), _mm256_set1_pd(3.02994407707441961300e-2));
  p = _mm256_add_pd(_mm256_mul_pd(p, z), _mm256_set1_pd(9.99999999999999999910e-1));
  p = _mm256_mul_pd(p, r);
  __m256d q = _mm256_set1_pd(3.00198505138664455042e-6);
  q = _mm256_add_pd(_mm256_mul_pd(q, z), _mm256_set1_pd(2.52448340349684104192e-3));
  q = _mm256_add_pd(_mm256_mul_pd(q, z), _mm256_set1_pd(2.27265548208155028766e-1));
  q = _mm256_add_pd(_mm256_mul_pd(q, z), _mm256_set1_pd(2.0));
  const __m256d e = _mm256_add_pd(
      _mm256_set1_pd(1.0),
      _mm256_div_pd(_mm256_add_pd(p, p), _mm256_sub_pd(q, p)));

  // scale by 2^k through the exponent field (k in [-1022, 1022] after clamp)
  const __m128i ki = _mm256_cvtpd_epi32(kd);
  const __m256i k64 = _mm256_cvtepi32_epi64(ki);
  const __m256i pow2 =
      _mm256_slli_epi64(_mm256_add_epi64(k64, _mm256_set1_epi64x(1023)), 52);
  return _mm256_mul_pd(e, _mm256_castsi256_pd(pow2));
}

// sin/cos for |x| up to ~1e6 rad (three-part pi/2 reduction; FDLIBM kernels)
inline void vsincos_pd(__m256d x, __m256d* s_out, __m256d* c_out) {
  const __m256d two_over_pi = _mm256_set1_pd(0.63661977236758134308);
  const __m256d kd = _mm256_round_pd(_mm256_mul_pd(x, two_over_pi),
                                     _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  const __m256d p1 = _mm256_set1_pd(1.57079632673412561417e+0);
  const __m256d p2 = _mm256_set1_pd(6.07710050650619224932e-11);
  const __m256d p3 = _mm256_set1_pd(2.02226624879595063154e-21);
  __m256d r = _mm256_sub_pd(x, _mm256_mul_pd(kd, p1));
  r = _mm256_sub_pd(r, _mm256_mul_pd(kd, p2));
  r = _mm256_sub_pd(r, _mm256_mul_pd(kd, p3));

  const __m256d z = _mm256_mul_pd(r, r);

  __m256d ps = _mm256_set1_pd(1.58969099521155010221e-10);
  ps = _mm256_add_pd(_mm256_mul_pd(ps, z), _mm256_set1_pd(-2.50507602534068634195e-8));
  ps = _mm256_add_pd(_mm256_mul_pd(ps, z), _mm256_set1_pd(2.75573137070700676789e-6));
  ps = _mm256_add_pd(_mm256_mul_pd(ps, z), _mm256_set1_pd(-1.98412698298579493134e-4));
  ps = _mm256_add_pd(_mm256_mul_pd(ps, z), _mm256_set1_pd(8.33333333332248946124e-3));
  ps = _mm256_add_pd(_mm256_mul_pd(ps, z), _mm256_set1_pd(-1.66666666666666324348e-1));
  const __m256d sin_r =
      _mm256_add_pd(r, _mm256_mul_pd(_mm256_mul_pd(r, z), ps));

  __m256d pc = _mm256_set1_pd(-1.13596475577881948265e-11);
  pc = _mm256_add_pd(_mm256_mul_pd(pc, z), _mm256_set1_pd(2.08757232129817482790e-9));
  pc = _mm256_add_pd(_mm256_mul_pd(pc, z), _mm256_set1_pd(-2.75573143513906633035e-7));
  pc = _mm256_add_pd(_mm256_mul_pd(pc, z), _mm256_set1_pd(2.48015872894767294178e-5));
  pc = _mm256_add_pd(_mm256_mul_pd(pc, z), _mm256_set1_pd(-1.38888888888741095749e-3));
  pc = _mm256_add_pd(_mm256_mul_pd(pc, z), _mm256_set1_pd(4.16666666666666019037e-2));
  __m256d cos_r = _mm256_mul_pd(_mm256_mul_pd(z, z), pc);
  cos_r = _mm256_add_pd(cos_r, _mm256_sub_pd(_mm256_set1_pd(1.0),
                                             _mm256_mul_pd(_mm256_set1_pd(0.5), z)));

  // quadrant fixup: k&1 swaps, k in {2,3} negates sin, k in {1,2} negates cos
  const __m128i ki = _mm256_cvtpd_epi32(kd);
  const __m256i k64 = _mm256_cvtepi32_epi64(ki);
  const __m256i one = _mm256_set1_epi64x(1);
  const __m256i two = _mm256_set1_epi64x(2);
  const __m256d swap_mask = _mm256_castsi256_pd(
      _mm256_cmpeq_epi64(_mm256_and_si256(k64, one), one));
  const __m256d sin_neg = _mm256_castsi256_pd(
      _mm256_cmpeq_epi64(_mm256_and_si256(k64, two), two));
  const __m256d cos_neg = _mm256_castsi256_pd(_mm256_cmpeq_epi64(
      _mm256_and_si256(_mm256_add_epi64(k64, one), two), two));

  __m256d s = _mm256_blendv_pd(sin_r, cos_r, swap_mask);
  __m256d c = _mm256_blendv_pd(cos_r, sin_r, swap_mask);
  const __m256d mzero = _mm256_set1_pd(-0.0);
  s = _mm256_xor_pd(s, _mm256_and_pd(sin_neg, mzero));
  c = _mm256_xor_pd(c, _mm256_and_pd(cos_neg, mzero));
  *s_out = s;
  *c_out = c;
}

// deinterleave 4 complex (two registers) into re/im lanes; unpack order is
// self-inverse so interleaving back restores memory layout
inline void load_cplx(const cplx* p, __m256d* re, __m256d* im) {
  const double* q = reinterpret_cast<const double*>(p);
  const __m256d v0 = _mm256_loadu_pd(q);
  const __m256d v1 = _mm256_loadu_pd(q + 4);
  *re = _mm256_unpacklo_pd(v0, v1);
  *im = _mm256_unpackhi_pd(v0, v1);
}

inline void store_cplx(cplx* p, __m256d re, __m256d im) {
  double* q = reinterpret_cast<double*>(p);
  _mm256_storeu_pd(q, _mm256_unpacklo_pd(re, im));
  _mm256_storeu_pd(q + 4, _mm256_unpackhi_pd(re, im));
}

// ---------------- kernels ---------------- //

void accum_peaks_gaussian_v(double* out, const double* nu, std::size_t n,
                            const double* centers, const double* weights,
                            std::size_t m, double fwhm, double amp) {
  const double inv_w = 1.0 / fwhm;
  const __m256d vinv = _mm256_set1_pd(inv_w);
  const __m256d vneg = _mm256_set1_pd(-kFourLn2);
  for (std::size_t j = 0; j < m; ++j) {
    const double c = centers[j];
    const double wj = weights ? weights[j] : amp;
    const __m256d vc = _mm256_set1_pd(c);
    const __m256d vw = _mm256_set1_pd(wj);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
      const __m256d x =
          _mm256_mul_pd(_mm256_sub_pd(_mm256_loadu_pd(nu + i), vc), vinv);
      const __m256d arg = _mm256_mul_pd(_mm256_mul_pd(vneg, x), x);
      const __m256d acc = _mm256_add_pd(_mm256_loadu_pd(out + i),
                                        _mm256_mul_pd(vw, vexp_pd(arg)));
      _mm256_storeu_pd(out + i, acc);
    }
    for (; i < n; ++i) {
      const double x = (nu[i] - c) * inv_w;
      out[i] += wj * std::exp(-kFourLn2 * x * x);
    }
  }
}

void accum_peaks_lorentzian_v(double* out, const double* nu, std::size_t n,
                              const double* centers, const double* weights,
                              std::size_t m, double fwhm, double amp) {
  const double inv_w = 1.0 / fwhm;
  const __m256d vinv = _mm256_set1_pd(inv_w);
  const __m256d vone = _mm256_set1_pd(1.0);
  const __m256d vfour = _mm256_set1_pd(4.0);
  for (std::size_t j = 0; j < m; ++j) {
    const double c = centers[j];
    const double wj = weights ? weights[j] : amp;
    const __m256d vc = _mm256_set1_pd(c);
    const __m256d vw = _mm256_set1_pd(wj);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
      const __m256d x =
          _mm256_mul_pd(_mm256_sub_pd(_mm256_loadu_pd(nu + i), vc), vinv);
      const __m256d den =
          _mm256_add_pd(vone, _mm256_mul_pd(_mm256_mul_pd(vfour, x), x));
      const __m256d acc =
          _mm256_add_pd(_mm256_loadu_pd(out + i), _mm256_div_pd(vw, den));
      _mm256_storeu_pd(out + i, acc);
    }
    for (; i < n; ++i) {
      const double x = (nu[i] - c) * inv_w;
      out[i] += wj / (1.0 + 4.0 * x * x);
    }
  }
}

void accum_peaks_square_v(double* out, const double* nu, std::size_t n,
                          const double* centers, const double* weights,
                          std::size_t m, double fwhm, double amp) {
  const double half = 0.5 * fwhm;
  const __m256d vn = _mm256_set1_pd(-half);
  const __m256d vp = _mm256_set1_pd(half);
  for (std::size_t j = 0; j < m; ++j) {
    const double c = centers[j];
    const double wj = weights ? weights[j] : amp;
    const __m256d vc = _mm256_set1_pd(c);
    const __m256d vw = _mm256_set1_pd(wj);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
      const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(nu + i), vc);
      const __m256d in = _mm256_and_pd(_mm256_cmp_pd(dx, vn, _CMP_GE_OQ),
                                       _mm256_cmp_pd(dx, vp, _CMP_LE_OQ));
      const __m256d acc =
          _mm256_add_pd(_mm256_loadu_pd(out + i), _mm256_and_pd(in, vw));
      _mm256_storeu_pd(out + i, acc);
    }
    for (; i < n; ++i) {
      const double dx = nu[i] - c;
      if (dx >= -half && dx <= half) out[i] += wj;
    }
  }
}

void lorentzian_line_v(double* out, const double* nu, std::size_t n,
                       double center, double fwhm, double amp) {
  const double hw = 0.5 * fwhm;
  const double hw2 = hw * hw;
  const __m256d vc = _mm256_set1_pd(center);
  const __m256d vh = _mm256_set1_pd(hw2);
  const __m256d va = _mm256_set1_pd(amp);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(nu + i), vc);
    const __m256d den = _mm256_add_pd(_mm256_mul_pd(dx, dx), vh);
    const __m256d acc = _mm256_add_pd(
        _mm256_loadu_pd(out + i),
        _mm256_div_pd(_mm256_mul_pd(va, vh), den));
    _mm256_storeu_pd(out + i, acc);
  }
  for (; i < n; ++i) {
    const double dx = nu[i] - center;
    out[i] += amp * hw2 / (dx * dx + hw2);
  }
}

void complex_exp_field_v(cplx* out, const double* d, const double* phase,
                         std::size_t n) {
  const __m256d mhalf = _mm256_set1_pd(-0.5);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d mag =
        vexp_pd(_mm256_mul_pd(mhalf, _mm256_loadu_pd(d + i)));
    __m256d s, c;
    vsincos_pd(_mm256_loadu_pd(phase + i), &s, &c);
    const __m256d re = _mm256_mul_pd(mag, c);
    const __m256d im = _mm256_mul_pd(mag, s);
    double* q = reinterpret_cast<double*>(out + i);
    const __m256d lo = _mm256_unpacklo_pd(re, im);  // re0 im0 re2 im2
    const __m256d hi = _mm256_unpackhi_pd(re, im);  // re1 im1 re3 im3
    _mm256_storeu_pd(q, _mm256_permute2f128_pd(lo, hi, 0x20));
    _mm256_storeu_pd(q + 4, _mm256_permute2f128_pd(lo, hi, 0x31));
  }
  for (; i < n; ++i) {
    const double mag = std::exp(-0.5 * d[i]);
    out[i] = cplx(mag * std::cos(phase[i]), mag * std::sin(phase[i]));
  }
}

void cavity_reflection_v(cplx* r, cplx* t, const cplx* a, std::size_t n,
                         double r1, double r2, double tc) {
  const __m256d vr1 = _mm256_set1_pd(r1);
  const __m256d vr2 = _mm256_set1_pd(r2);
  const __m256d vr12 = _mm256_set1_pd(r1 * r2);
  const __m256d vtc = _mm256_set1_pd(tc);
  const __m256d vone = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d ar, ai;
    load_cplx(a + i, &ar, &ai);
    const __m256d a2r =
        _mm256_sub_pd(_mm256_mul_pd(ar, ar), _mm256_mul_pd(ai, ai));
    const __m256d a2i =
        _mm256_add_pd(_mm256_mul_pd(ar, ai), _mm256_mul_pd(ai, ar));
    const __m256d nr = _mm256_add_pd(_mm256_sub_pd(_mm256_setzero_pd(), vr1),
                                     _mm256_mul_pd(vr2, a2r));
    const __m256d ni = _mm256_mul_pd(vr2, a2i);
    const __m256d dr = _mm256_sub_pd(vone, _mm256_mul_pd(vr12, a2r));
    const __m256d di =
        _mm256_sub_pd(_mm256_setzero_pd(), _mm256_mul_pd(vr12, a2i));
    const __m256d den =
        _mm256_add_pd(_mm256_mul_pd(dr, dr), _mm256_mul_pd(di, di));
    const __m256d rr = _mm256_div_pd(
        _mm256_add_pd(_mm256_mul_pd(nr, dr), _mm256_mul_pd(ni, di)), den);
    const __m256d ri = _mm256_div_pd(
        _mm256_sub_pd(_mm256_mul_pd(ni, dr), _mm256_mul_pd(nr, di)), den);
    store_cplx(r + i, rr, ri);
    if (t) {
      const __m256d tr = _mm256_mul_pd(vtc, ar);
      const __m256d ti = _mm256_mul_pd(vtc, ai);
      const __m256d wr = _mm256_div_pd(
          _mm256_add_pd(_mm256_mul_pd(tr, dr), _mm256_mul_pd(ti, di)), den);
      const __m256d wi = _mm256_div_pd(
          _mm256_sub_pd(_mm256_mul_pd(ti, dr), _mm256_mul_pd(tr, di)), den);
      store_cplx(t + i, wr, wi);
    }
  }
  if (i < n) {
    // scalar tail, identical op order
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
}

void rotate90_v(cplx* buf, std::size_t i0, std::size_t i1, int sign) {
  double* q = reinterpret_cast<double*>(buf);
  const __m256d mask = (sign >= 0)
                           ? _mm256_set_pd(0.0, -0.0, 0.0, -0.0)
                           : _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
  std::size_t i = i0;
  for (; i + 2 <= i1; i += 2) {
    const __m256d v = _mm256_loadu_pd(q + 2 * i);
    const __m256d sw = _mm256_permute_pd(v, 0x5);  // swap re/im in each pair
    _mm256_storeu_pd(q + 2 * i, _mm256_xor_pd(sw, mask));
  }
  for (; i < i1; ++i) {
    buf[i] = (sign >= 0) ? cplx(-buf[i].imag(), buf[i].real())
                         : cplx(buf[i].imag(), -buf[i].real());
  }
}

void abs2_v(double* out, const cplx* x, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d re, im;
    load_cplx(x + i, &re, &im);  // order re0 re2 re1 re3
    const __m256d r2 =
        _mm256_add_pd(_mm256_mul_pd(re, re), _mm256_mul_pd(im, im));
    _mm256_storeu_pd(out + i, _mm256_permute4x64_pd(r2, 0xD8));  // 0,2,1,3
  }
  for (; i < n; ++i)
    out[i] = x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
}

double energy_v(const cplx* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const double* q = reinterpret_cast<const double*>(x);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(q + 2 * i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i)
    total += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return total;
}

void group_index_stencil_v(double* ng, const double* dn, const double* nu,
                           std::size_t n, double n_bg, double nu0,
                           double inv_2dnu) {
  if (n < 2) return;
  const __m256d vbg = _mm256_set1_pd(n_bg);
  const __m256d v0 = _mm256_set1_pd(nu0);
  const __m256d vinv = _mm256_set1_pd(inv_2dnu);
  std::size_t i = 1;
  for (; i + 4 <= n - 1; i += 4) {
    const __m256d diff = _mm256_mul_pd(
        _mm256_sub_pd(_mm256_loadu_pd(dn + i + 1), _mm256_loadu_pd(dn + i - 1)),
        vinv);
    const __m256d nuabs = _mm256_add_pd(v0, _mm256_loadu_pd(nu + i));
    const __m256d val = _mm256_add_pd(
        _mm256_add_pd(vbg, _mm256_loadu_pd(dn + i)),
        _mm256_mul_pd(nuabs, diff));
    _mm256_storeu_pd(ng + i, val);
  }
  for (; i + 1 < n; ++i)
    ng[i] = n_bg + dn[i] + (nu0 + nu[i]) * ((dn[i + 1] - dn[i - 1]) * inv_2dnu);
}

void pump_window_v(double* src_g, double* tgt_e, const double* det,
                   std::size_t n, double lo, double hi, double p) {
  const double keep = 1.0 - p;
  const __m256d vlo = _mm256_set1_pd(lo);
  const __m256d vhi = _mm256_set1_pd(hi);
  const __m256d vp = _mm256_set1_pd(p);
  const __m256d vkeep = _mm256_set1_pd(keep);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dv = _mm256_loadu_pd(det + i);
    const __m256d in = _mm256_and_pd(_mm256_cmp_pd(dv, vlo, _CMP_GE_OQ),
                                     _mm256_cmp_pd(dv, vhi, _CMP_LE_OQ));
    const __m256d src = _mm256_loadu_pd(src_g + i);
    const __m256d tgt = _mm256_loadu_pd(tgt_e + i);
    const __m256d moved = _mm256_and_pd(in, _mm256_mul_pd(vp, src));
    _mm256_storeu_pd(tgt_e + i, _mm256_add_pd(tgt, moved));
    const __m256d kept = _mm256_mul_pd(src, vkeep);
    _mm256_storeu_pd(src_g + i, _mm256_blendv_pd(src, kept, in));
  }
  for (; i < n; ++i) {
    if (det[i] >= lo && det[i] <= hi) {
      tgt_e[i] += p * src_g[i];
      src_g[i] *= keep;
    }
  }
}

void relax_excited_v(double* g1, double* g2, double* g3, double* e1,
                     double* e2, double* e3, std::size_t n, const double* b) {
  const __m256d b00 = _mm256_set1_pd(b[0]), b01 = _mm256_set1_pd(b[1]),
                b02 = _mm256_set1_pd(b[2]), b10 = _mm256_set1_pd(b[3]),
                b11 = _mm256_set1_pd(b[4]), b12 = _mm256_set1_pd(b[5]),
                b20 = _mm256_set1_pd(b[6]), b21 = _mm256_set1_pd(b[7]),
                b22 = _mm256_set1_pd(b[8]);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d p1 = _mm256_loadu_pd(e1 + i);
    const __m256d p2 = _mm256_loadu_pd(e2 + i);
    const __m256d p3 = _mm256_loadu_pd(e3 + i);
    __m256d v = _mm256_loadu_pd(g1 + i);
    v = _mm256_add_pd(v, _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(b00, p1),
                                                     _mm256_mul_pd(b10, p2)),
                                       _mm256_mul_pd(b20, p3)));
    _mm256_storeu_pd(g1 + i, v);
    v = _mm256_loadu_pd(g2 + i);
    v = _mm256_add_pd(v, _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(b01, p1),
                                                     _mm256_mul_pd(b11, p2)),
                                       _mm256_mul_pd(b21, p3)));
    _mm256_storeu_pd(g2 + i, v);
    v = _mm256_loadu_pd(g3 + i);
    v = _mm256_add_pd(v, _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(b02, p1),
                                                     _mm256_mul_pd(b12, p2)),
                                       _mm256_mul_pd(b22, p3)));
    _mm256_storeu_pd(g3 + i, v);
    _mm256_storeu_pd(e1 + i, zero);
    _mm256_storeu_pd(e2 + i, zero);
    _mm256_storeu_pd(e3 + i, zero);
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

const KernelTable& avx2_table() {
  static const KernelTable t = {
      accum_peaks_gaussian_v, accum_peaks_lorentzian_v, accum_peaks_square_v,
      lorentzian_line_v,      complex_exp_field_v,      cavity_reflection_v,
      rotate90_v,             abs2_v,                   energy_v,
      group_index_stencil_v,  pump_window_v,            relax_excited_v,
  };
  return t;
}

}  // namespace afc::kernels

#endif  // x86
