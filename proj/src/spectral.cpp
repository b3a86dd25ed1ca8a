#include "afc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "afc/errors.hpp"
#include "afc/fft.hpp"
#include "afc/kernels.hpp"

namespace afc {

PeakShape parse_peak_shape(const std::string& s) {
  if (s == "gaussian") return PeakShape::gaussian;
  if (s == "lorentzian") return PeakShape::lorentzian;
  if (s == "square") return PeakShape::square;
  throw std::invalid_argument("unknown peak shape: " + s);
}

const char* peak_shape_name(PeakShape s) {
  switch (s) {
    case PeakShape::gaussian: return "gaussian";
    case PeakShape::lorentzian: return "lorentzian";
    case PeakShape::square: return "square";
  }
  return "?";
}

void CombSpec::validate() const {
  if (n_peaks < 1)
    throw std::invalid_argument("comb: n_peaks must be >= 1");
  if (!(gamma_fwhm_hz > 0.0) || !(delta_hz > gamma_fwhm_hz))
    throw std::invalid_argument(
        "comb: need delta_hz > gamma_fwhm_hz > 0 (finesse = delta/gamma > 1)");
  if (!(background_d0 >= 0.0) || !(peak_d >= background_d0))
    throw std::invalid_argument("comb: need peak_d >= background_d0 >= 0");
}

void InhomogeneousLine::validate() const {
  if (!(fwhm_hz > 0.0))
    throw std::invalid_argument("line: fwhm_hz must be positive");
  if (!(center_d >= 0.0))
    throw std::invalid_argument("line: center_d must be non-negative");
}

std::vector<double> comb_peak_centers(const CombSpec& comb) {
  std::vector<double> c(comb.n_peaks);
  const double mid = 0.5 * static_cast<double>(comb.n_peaks - 1);
  for (std::size_t k = 0; k < comb.n_peaks; ++k)
    c[k] = comb.center_hz + (static_cast<double>(k) - mid) * comb.delta_hz;
  return c;
}

AbsorptionSpectrum comb_optical_depth(const CombSpec& comb,
                                      const FrequencyGrid& grid) {
  comb.validate();
  const auto centers = comb_peak_centers(comb);
  const double lo = grid.nu(0);
  const double hi = grid.nu(grid.n_points - 1);
  if (centers.front() < lo || centers.back() > hi)
    warn("comb peaks extend beyond the grid span; structure is truncated");

  AbsorptionSpectrum out;
  out.grid = grid;
  out.d_of_nu.assign(grid.n_points, comb.background_d0);
  const auto nu = grid.axis();
  const double amp = comb.peak_d - comb.background_d0;
  const auto& k = kernels::ops();
  switch (comb.shape) {
    case PeakShape::gaussian:
      k.accum_peaks_gaussian(out.d_of_nu.data(), nu.data(), nu.size(),
                             centers.data(), nullptr, centers.size(),
                             comb.gamma_fwhm_hz, amp);
      break;
    case PeakShape::lorentzian:
      k.accum_peaks_lorentzian(out.d_of_nu.data(), nu.data(), nu.size(),
                               centers.data(), nullptr, centers.size(),
                               comb.gamma_fwhm_hz, amp);
      break;
    case PeakShape::square:
      k.accum_peaks_square(out.d_of_nu.data(), nu.data(), nu.size(),
                           centers.data(), nullptr, centers.size(),
                           comb.gamma_fwhm_hz, amp);
      break;
  }
  return out;
}

AbsorptionSpectrum inhomogeneous_depth(const InhomogeneousLine& line,
                                       const FrequencyGrid& grid) {
  line.validate();
  AbsorptionSpectrum out;
  out.grid = grid;
  out.d_of_nu.assign(grid.n_points, 0.0);
  const auto nu = grid.axis();
  kernels::ops().lorentzian_line(out.d_of_nu.data(), nu.data(), nu.size(),
                                 line.center_hz, line.fwhm_hz, line.center_d);
  return out;
}

// H[f](nu) = (1/pi) PV int f(nu')/(nu'-nu) dnu' by the analytic-signal
// multiplier: forward FFT (e^{-i} kernel), multiply positive-frequency bins
// by +i and negative ones by -i, zero DC/Nyquist, inverse FFT, real part.
// The input is centered in a zero-padded buffer and edge-tapered so the
// implicit periodization does not leak across the seam.
std::vector<double> hilbert_transform(const std::vector<double>& f,
                                      std::size_t pad_factor,
                                      double taper_frac) {
  const std::size_t n = f.size();
  if (n == 0) return {};
  if (pad_factor < 4)
    throw std::invalid_argument("hilbert_transform: pad_factor must be >= 4");
  if (!(taper_frac >= 0.0 && taper_frac <= 0.25))
    throw std::invalid_argument("hilbert_transform: taper_frac outside [0, 0.25]");

  const std::size_t M = next_pow2(pad_factor * n);
  std::vector<std::complex<double>> buf(M, 0.0);
  const std::size_t off = (M - n) / 2;
  for (std::size_t i = 0; i < n; ++i) buf[off + i] = f[i];

  const std::size_t m = static_cast<std::size_t>(std::ceil(taper_frac * n));
  for (std::size_t j = 0; j < m && j < n; ++j) {
    const double w =
        0.5 * (1.0 - std::cos(M_PI * (static_cast<double>(j) + 0.5) /
                              static_cast<double>(m)));
    buf[off + j] *= w;
    buf[off + n - 1 - j] *= w;
  }

  fft_pow2(buf, -1);
  const auto& k = kernels::ops();
  k.rotate90(buf.data(), 1, M / 2, +1);
  k.rotate90(buf.data(), M / 2 + 1, M, -1);
  buf[0] = 0.0;
  buf[M / 2] = 0.0;
  fft_pow2(buf, +1);

  std::vector<double> h(n);
  const double inv = 1.0 / static_cast<double>(M);
  for (std::size_t i = 0; i < n; ++i) h[i] = buf[off + i].real() * inv;
  return h;
}

ComplexIndex kramers_kronig_index(const AbsorptionSpectrum& abs, double nu0_hz,
                                  double n_bg, double length_m,
                                  const KramersKronigOptions& opt) {
  if (!(length_m > 0.0))
    throw std::invalid_argument("kramers_kronig_index: length_m must be positive");
  if (!(nu0_hz > 0.0))
    throw std::invalid_argument("kramers_kronig_index: nu0_hz must be positive");
  if (opt.min_feature_hz > 0.0 &&
      abs.grid.dnu() > opt.min_feature_hz / 8.0)
    throw resolution_error(
        "kramers_kronig_index: fewer than 8 grid points per spectral feature (" +
        std::to_string(opt.min_feature_hz) + " Hz); refine the grid");

  const std::size_t n = abs.d_of_nu.size();
  const double peak = n ? *std::max_element(abs.d_of_nu.begin(), abs.d_of_nu.end()) : 0.0;
  if (peak > 0.0) {
    const double edge = std::max(abs.d_of_nu.front(), abs.d_of_nu.back());
    if (edge > 0.1 * peak)
      warn("kramers_kronig_index: absorption does not decay toward the grid "
           "edges; the edge taper will distort nearby dispersion");
  }

  const auto h = hilbert_transform(abs.d_of_nu, opt.pad_factor, opt.taper_frac);

  ComplexIndex idx;
  idx.grid = abs.grid;
  idx.n_bg = n_bg;
  idx.nu0_hz = nu0_hz;
  idx.delta_n.resize(n);
  // chi'' = d/L * c0/(2 pi nu0); delta_n = H[chi'']/2
  const double scale = 0.5 * kC0 / (2.0 * M_PI * nu0_hz * length_m);
  double max_dn = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    idx.delta_n[i] = scale * h[i];
    max_dn = std::max(max_dn, std::abs(idx.delta_n[i]));
  }
  if (max_dn > 0.1 * n_bg)
    warn("kramers_kronig_index: |delta_n| exceeds 0.1 n_bg; narrowband model "
         "is outside its validity range");
  return idx;
}

ComplexIndex lorentzian_line_index(const InhomogeneousLine& line,
                                   const FrequencyGrid& grid, double nu0_hz,
                                   double n_bg, double length_m) {
  line.validate();
  if (!(length_m > 0.0) || !(nu0_hz > 0.0))
    throw std::invalid_argument("lorentzian_line_index: need positive nu0 and length");
  ComplexIndex idx;
  idx.grid = grid;
  idx.n_bg = n_bg;
  idx.nu0_hz = nu0_hz;
  idx.delta_n.resize(grid.n_points);
  const double hw = 0.5 * line.fwhm_hz;
  const double scale = kC0 * line.center_d / (4.0 * M_PI * nu0_hz * length_m);
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    const double dx = grid.nu(i) - line.center_hz;
    idx.delta_n[i] = scale * hw * (-dx) / (dx * dx + hw * hw);
  }
  return idx;
}

std::vector<double> group_index(const ComplexIndex& idx) {
  const std::size_t n = idx.delta_n.size();
  if (n < 3)
    throw std::invalid_argument("group_index: need at least 3 grid points");
  const auto nu = idx.grid.axis();
  std::vector<double> ng(n);
  const double dnu = idx.grid.dnu();
  // nu_abs = nu0 + (nu - grid center); fold the center shift into the constant
  const double nu0_rel = idx.nu0_hz - idx.grid.center_hz;
  kernels::ops().group_index_stencil(ng.data(), idx.delta_n.data(), nu.data(),
                                     n, idx.n_bg, nu0_rel, 1.0 / (2.0 * dnu));
  ng[0] = idx.n_bg + idx.delta_n[0] +
          (nu0_rel + nu[0]) * (idx.delta_n[1] - idx.delta_n[0]) / dnu;
  ng[n - 1] = idx.n_bg + idx.delta_n[n - 1] +
              (nu0_rel + nu[n - 1]) *
                  (idx.delta_n[n - 1] - idx.delta_n[n - 2]) / dnu;
  return ng;
}

}  // namespace afc
