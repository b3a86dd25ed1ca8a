#pragma once

// Data-parallel inner loops used by the physics modules. Every entry has a
// scalar reference implementation; x86 builds add AVX2 variants and aarch64
// builds add NEON variants for the pure-arithmetic subset. The active table is
// picked once at startup from CPU features (override with AFC_KERNELS=scalar).
//
// Equivalence contract (enforced by tests/test_kernels.cpp):
//   * kernels doing only +,-,*,/ in fixed per-element order are bit-exact
//     across backends (the build sets -ffp-contract=off and no FMA intrinsics
//     are used);
//   * kernels built on the vectorized exp/sincos polynomials and reductions
//     (re-associated sums) agree to a few ulp instead.

#include <complex>
#include <cstddef>

namespace afc::kernels {

using cplx = std::complex<double>;

enum class Backend { scalar, avx2, neon };

struct KernelTable {
  // out[i] += S((nu[i]-centers[j])/fwhm) * (weights ? weights[j] : amp), all j.
  // Shapes: gaussian exp(-4 ln2 x^2), lorentzian 1/(1+4x^2), square |x|<=1/2.
  void (*accum_peaks_gaussian)(double* out, const double* nu, std::size_t n,
                               const double* centers, const double* weights,
                               std::size_t m, double fwhm, double amp);
  void (*accum_peaks_lorentzian)(double* out, const double* nu, std::size_t n,
                                 const double* centers, const double* weights,
                                 std::size_t m, double fwhm, double amp);
  void (*accum_peaks_square)(double* out, const double* nu, std::size_t n,
                             const double* centers, const double* weights,
                             std::size_t m, double fwhm, double amp);

  // out[i] += amp * (G/2)^2 / ((nu[i]-center)^2 + (G/2)^2)
  void (*lorentzian_line)(double* out, const double* nu, std::size_t n,
                          double center, double fwhm, double amp);

  // out[i] = exp(-d[i]/2) * (cos(phase[i]) + i sin(phase[i]))
  void (*complex_exp_field)(cplx* out, const double* d, const double* phase,
                            std::size_t n);

  // r[i] = (-r1 + r2*a^2) / (1 - r1*r2*a^2), t[i] = tc*a / (1 - r1*r2*a^2)
  // (t may be null when only reflection is needed)
  void (*cavity_reflection)(cplx* r, cplx* t, const cplx* a, std::size_t n,
                            double r1, double r2, double tc);

  // buf[i] *= +i (sign=+1) or -i (sign=-1) for i in [i0, i1)
  void (*rotate90)(cplx* buf, std::size_t i0, std::size_t i1, int sign);

  // out[i] = |x[i]|^2
  void (*abs2)(double* out, const cplx* x, std::size_t n);

  // sum_i |x[i]|^2 (reduction; backend may re-associate)
  double (*energy)(const cplx* x, std::size_t n);

  // interior stencil: ng[i] = n_bg + dn[i] + (nu0 + nu[i]) * (dn[i+1]-dn[i-1]) * inv_2dnu
  // for i in [1, n-1); edges are the caller's job.
  void (*group_index_stencil)(double* ng, const double* dn, const double* nu,
                              std::size_t n, double n_bg, double nu0,
                              double inv_2dnu);

  // classes with det[i] in [lo, hi]: tgt_e[i] += p*src_g[i]; src_g[i] *= 1-p
  void (*pump_window)(double* src_g, double* tgt_e, const double* det,
                      std::size_t n, double lo, double hi, double p);

  // g_k[i] += b[e][k] * e_e[i] for the 3x3 row-stochastic b; then e_*[i] = 0
  void (*relax_excited)(double* g1, double* g2, double* g3, double* e1,
                        double* e2, double* e3, std::size_t n,
                        const double* b /* 9, row-major b[e][g] */);
};

const KernelTable& table(Backend b);    // throws std::invalid_argument if absent
bool backend_available(Backend b);
Backend active_backend();
void set_active_backend(Backend b);     // throws if unavailable
const char* backend_name(Backend b);

// Active-table shorthand used by the modules.
const KernelTable& ops();

}  // namespace afc::kernels
