#include "afc/cavity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "afc/errors.hpp"
#include "afc/kernels.hpp"

namespace afc {
namespace {

bool same_grid(const FrequencyGrid& a, const FrequencyGrid& b) {
  return a.center_hz == b.center_hz && a.span_hz == b.span_hz &&
         a.n_points == b.n_points;
}

// Round-trip phase in cycles; w = m (integer) is the m-th resonance.
double rt_cycles(double nu_abs, double n_total, double length_m) {
  return 2.0 * nu_abs * n_total * length_m / kC0;
}

}  // namespace

void CavitySpec::validate() const {
  if (!(length_m > 0.0))
    throw std::invalid_argument("cavity: length_m must be positive");
  if (!(r1_power >= 0.0) || !(r1_power < 1.0))
    throw std::invalid_argument("cavity: r1_power must be in [0, 1)");
  if (!(r2_power >= 0.0) || !(r2_power <= 1.0))
    throw std::invalid_argument("cavity: r2_power must be in [0, 1]");
  if (!(n_bg > 0.0))
    throw std::invalid_argument("cavity: n_bg must be positive");
  if (!(mode_coupling > 0.0) || !(mode_coupling <= 1.0))
    throw std::invalid_argument("cavity: mode_coupling must be in (0, 1]");
}

std::vector<std::complex<double>> single_pass_amplitude(
    const AbsorptionSpectrum& abs, const ComplexIndex& idx, double length_m,
    double nu0_hz) {
  if (!same_grid(abs.grid, idx.grid))
    throw std::invalid_argument("single_pass_amplitude: grids differ");
  const std::size_t n = abs.grid.n_points;
  if (abs.d_of_nu.size() != n || idx.delta_n.size() != n)
    throw std::invalid_argument("single_pass_amplitude: array size mismatch");
  if (!(length_m > 0.0) || !(nu0_hz > 0.0))
    throw std::invalid_argument("single_pass_amplitude: bad length or nu0");

  // Split off the enormous constant carrier phase and reduce it mod 2pi in
  // scalar so the vectorized sincos only ever sees O(1)-radian arguments.
  const double pref = 2.0 * M_PI * length_m / kC0;
  const double carrier =
      std::remainder(pref * nu0_hz * idx.n_bg, 2.0 * M_PI);

  std::vector<double> phase(n);
  const double c = abs.grid.center_hz;
  for (std::size_t i = 0; i < n; ++i) {
    const double rel = abs.grid.nu(i) - c;
    phase[i] = carrier + pref * (rel * idx.n_bg + (nu0_hz + rel) * idx.delta_n[i]);
  }

  std::vector<std::complex<double>> a(n);
  kernels::ops().complex_exp_field(a.data(), abs.d_of_nu.data(), phase.data(), n);
  return a;
}

CavityResponse cavity_response(const FrequencyGrid& grid,
                               const std::vector<std::complex<double>>& a,
                               double r1_power, double r2_power) {
  const std::size_t n = grid.n_points;
  if (a.size() != n)
    throw std::invalid_argument("cavity_response: array size mismatch");
  if (!(r1_power >= 0.0) || r1_power >= 1.0 || !(r2_power >= 0.0) ||
      r2_power > 1.0)
    throw std::invalid_argument("cavity_response: mirror powers out of range");

  const double r1 = std::sqrt(r1_power);
  const double r2 = std::sqrt(r2_power);
  const double tc = std::sqrt((1.0 - r1_power) * (1.0 - r2_power));
  for (std::size_t i = 0; i < n; ++i) {
    if (r1 * r2 * std::norm(a[i]) >= 1.0 - 1e-12)
      throw std::invalid_argument(
          "cavity_response: round-trip gain >= 1 (active medium?)");
  }

  CavityResponse resp;
  resp.grid = grid;
  resp.r_of_nu.resize(n);
  resp.t_of_nu.resize(n);
  kernels::ops().cavity_reflection(resp.r_of_nu.data(), resp.t_of_nu.data(),
                                   a.data(), n, r1, r2, tc);
  return resp;
}

double impedance_matched_r1(double d_single_pass) {
  if (d_single_pass < 0.0)
    throw std::invalid_argument("impedance_matched_r1: depth must be >= 0");
  return std::exp(-2.0 * d_single_pass);
}

double empty_fsr(const CavitySpec& cav) {
  cav.validate();
  return kC0 / (2.0 * cav.length_m * cav.n_bg);
}

std::vector<CavityMode> dispersive_mode_structure(const ComplexIndex& idx,
                                                  const CavitySpec& cav) {
  cav.validate();
  const std::size_t n = idx.grid.n_points;
  if (idx.delta_n.size() != n)
    throw std::invalid_argument("dispersive_mode_structure: size mismatch");
  if (!(idx.nu0_hz > 0.0))
    throw std::invalid_argument("dispersive_mode_structure: nu0_hz unset");

  const double dnu = idx.grid.dnu();
  const double c = idx.grid.center_hz;
  const auto ng = group_index(idx);

  auto cycles_at = [&](double nu, std::size_t lo) {
    // delta_n linearly interpolated inside grid cell [lo, lo+1]
    const double f = (nu - idx.grid.nu(lo)) / dnu;
    const double dn = idx.delta_n[lo] + f * (idx.delta_n[lo + 1] - idx.delta_n[lo]);
    return rt_cycles(idx.nu0_hz + (nu - c), cav.n_bg + dn, cav.length_m);
  };

  const double rr = std::sqrt(cav.r1_power * cav.r2_power);
  const double finesse = rr > 0.0 ? M_PI * std::sqrt(rr) / (1.0 - rr) : 1.0;

  std::vector<CavityMode> modes;
  double w_prev = rt_cycles(idx.nu0_hz + (idx.grid.nu(0) - c),
                            cav.n_bg + idx.delta_n[0], cav.length_m);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double w_next = rt_cycles(idx.nu0_hz + (idx.grid.nu(i + 1) - c),
                                    cav.n_bg + idx.delta_n[i + 1], cav.length_m);
    const double wl = std::min(w_prev, w_next);
    const double wh = std::max(w_prev, w_next);
    for (double m = std::floor(wl) + 1.0; m <= wh; m += 1.0) {
      double a = idx.grid.nu(i), b = idx.grid.nu(i + 1);
      double fa = w_prev - m;
      while (b - a > dnu / 100.0) {
        const double mid = 0.5 * (a + b);
        const double fm = cycles_at(mid, i) - m;
        if ((fa <= 0.0) == (fm <= 0.0)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      const double nu_res = 0.5 * (a + b);
      const double f = (nu_res - idx.grid.nu(i)) / dnu;
      const double ng_res = ng[i] + f * (ng[i + 1] - ng[i]);
      const double fsr = kC0 / (2.0 * cav.length_m * std::max(ng_res, 1e-12));
      modes.push_back({nu_res, fsr, fsr / finesse});
    }
    w_prev = w_next;
  }
  return modes;
}

double align_cavity_length(const CavitySpec& cav, double nu0_hz,
                           double target_hz, double delta_n_at_target) {
  cav.validate();
  const double nu_abs = nu0_hz + target_hz;
  if (!(nu_abs > 0.0))
    throw std::invalid_argument("align_cavity_length: target frequency <= 0");
  const double w = rt_cycles(nu_abs, cav.n_bg + delta_n_at_target, cav.length_m);
  const double m = std::round(w);
  if (m < 1.0)
    throw std::invalid_argument(
        "align_cavity_length: cavity shorter than half a wavelength");
  return cav.length_m * (m / w);
}

std::vector<ReflectionScanPoint> reflection_scan(
    const InhomogeneousLine& line, const CavitySpec& cav, double nu0_hz,
    const GaussianPulseSpec& probe, const std::vector<double>& scan_offsets_hz) {
  line.validate();
  cav.validate();
  if (!(nu0_hz > 0.0))
    throw std::invalid_argument("reflection_scan: nu0_hz must be positive");
  if (scan_offsets_hz.empty())
    throw std::invalid_argument("reflection_scan: no scan offsets");
  if (!(probe.t_fwhm_s > 0.0))
    throw std::invalid_argument("reflection_scan: probe t_fwhm_s must be > 0");

  // One probe spectrum, reused at every offset: only |X|^2 matters, and the
  // line/cavity are re-expressed in the probe-local frame per offset.
  const std::size_t nt = 1024;
  const double dt = probe.t_fwhm_s / 16.0;
  GaussianPulseSpec local = probe;
  local.carrier_offset_hz = 0.0;
  local.t_center_s = 0.0;
  const TimeGrid tg = make_time_grid(dt, nt, -0.5 * dt * static_cast<double>(nt));
  const SpectrumTrace X = to_spectrum(gaussian_waveform(local, tg));
  const std::size_t nf = X.samples.size();

  std::vector<double> w(nf);
  kernels::ops().abs2(w.data(), X.samples.data(), nf);
  double w_total = 0.0;
  for (double v : w) w_total += v;

  const double eps = cav.mode_coupling;
  std::vector<ReflectionScanPoint> out;
  out.reserve(scan_offsets_hz.size());
  std::vector<double> rr2(nf);

  for (const double off : scan_offsets_hz) {
    // In the probe frame the line center sits at -offset.
    InhomogeneousLine shifted = line;
    shifted.center_hz = -off;

    const AbsorptionSpectrum d = inhomogeneous_depth(shifted, X.grid);
    const ComplexIndex idx =
        lorentzian_line_index(shifted, X.grid, nu0_hz, cav.n_bg, cav.length_m);
    const double dn0 = idx.delta_n[nf / 2];  // grid center = probe carrier

    CavitySpec tuned = cav;
    tuned.length_m = align_cavity_length(cav, nu0_hz + off, 0.0, dn0);

    const auto a = single_pass_amplitude(d, idx, tuned.length_m, nu0_hz + off);
    const auto resp = cavity_response(X.grid, a, cav.r1_power, cav.r2_power);

    kernels::ops().abs2(rr2.data(), resp.r_of_nu.data(), nf);
    double acc = 0.0;
    for (std::size_t s = 0; s < nf; ++s) acc += w[s] * rr2[s];
    out.push_back({off, eps * (acc / w_total) + (1.0 - eps)});
  }
  return out;
}

}  // namespace afc
