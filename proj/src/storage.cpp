#include "afc/storage.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "afc/errors.hpp"
#include "afc/kernels.hpp"

namespace afc {
namespace {

constexpr double kGolden = 0.6180339887498949;  // (sqrt 5 - 1) / 2
constexpr int kMaxSecondaryEchoes = 5;

bool same_grid(const FrequencyGrid& a, const FrequencyGrid& b) {
  return a.center_hz == b.center_hz && a.span_hz == b.span_hz &&
         a.n_points == b.n_points;
}

double windowed_energy(const TimeTrace& y, double t_lo, double t_hi) {
  const double t0 = y.grid.t0_s;
  const double dt = y.grid.dt_s;
  const auto n = static_cast<std::ptrdiff_t>(y.samples.size());
  auto k0 = static_cast<std::ptrdiff_t>(std::ceil((t_lo - t0) / dt));
  auto k1 = static_cast<std::ptrdiff_t>(std::floor((t_hi - t0) / dt));
  k0 = std::max<std::ptrdiff_t>(k0, 0);
  k1 = std::min(k1, n - 1);
  if (k1 < k0) return 0.0;
  return kernels::ops().energy(y.samples.data() + k0,
                               static_cast<std::size_t>(k1 - k0 + 1)) * dt;
}

// Width of |X|^2 between its outermost crossings of frac * max.
double spectral_intensity_width(const SpectrumTrace& X, double frac) {
  const std::size_t n = X.samples.size();
  std::vector<double> p(n);
  kernels::ops().abs2(p.data(), X.samples.data(), n);
  const double thr = frac * *std::max_element(p.begin(), p.end());
  if (!(thr > 0.0)) return 0.0;
  std::size_t lo = 0, hi = n - 1;
  while (lo < n && p[lo] < thr) ++lo;
  while (hi > 0 && p[hi] < thr) --hi;
  if (lo >= hi) return 0.0;
  const double dnu = X.grid.dnu();
  double left = X.grid.nu(lo), right = X.grid.nu(hi);
  if (lo > 0) left -= dnu * (p[lo] - thr) / (p[lo] - p[lo - 1]);
  if (hi + 1 < n) right += dnu * (p[hi] - thr) / (p[hi] - p[hi + 1]);
  return right - left;
}

double input_peak_time(const TimeTrace& x) {
  const std::size_t n = x.samples.size();
  std::vector<double> p(n);
  kernels::ops().abs2(p.data(), x.samples.data(), n);
  const std::size_t ip =
      static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
  return x.grid.t(ip);
}

struct PropagationSetup {
  SpectrumTrace X;
  double t_peak_in = 0.0;
  double halfwidth = 0.0;
  double input_fwhm = 0.0;
};

PropagationSetup prepare_input(const TimeTrace& pulse, double delta_hz,
                               const StorageOptions& opt) {
  PropagationSetup s;
  s.X = to_spectrum(pulse);
  s.t_peak_in = input_peak_time(pulse);
  s.input_fwhm = intensity_fwhm(pulse);
  s.halfwidth = opt.window_halfwidth_s > 0.0 ? opt.window_halfwidth_s
                                             : 1.5 * s.input_fwhm;

  // A pulse that only spans a couple of teeth is not rephased as a comb echo;
  // require the 10%-intensity spectral extent to cover at least three periods.
  const double w10 = spectral_intensity_width(s.X, 0.1);
  if (w10 < 3.0 * delta_hz)
    throw configuration_error(
        "storage: pulse spectrum covers fewer than three comb periods "
        "(shorten the pulse or widen the comb spacing)");
  return s;
}

void add_secondary_echoes(EchoMetrics& m, const TimeTrace& y, double e_in,
                          double t_peak_in, double delta_hz, double halfwidth) {
  const double period = 1.0 / delta_hz;
  if (2.0 * halfwidth >= period) {
    warn("echo windows wider than the revival period; skipping secondary echoes");
    return;
  }
  const double t_end = y.grid.t(y.samples.size() - 1);
  for (int order = 2; order <= kMaxSecondaryEchoes; ++order) {
    const double tc = t_peak_in + order * period;
    if (tc + halfwidth > t_end) break;
    const double e = windowed_energy(y, tc - halfwidth, tc + halfwidth);
    m.secondary_echoes.push_back({order, tc, e / e_in});
  }
}

}  // namespace

void AfcParams::validate() const {
  if (!(d0 >= 0.0) || !(d >= d0))
    throw std::invalid_argument("afc: need d >= d0 >= 0");
  if (!(finesse > 1.0))
    throw std::invalid_argument("afc: finesse must exceed 1");
}

double analytic_afc_efficiency(const AfcParams& p) {
  p.validate();
  const double dt = (p.d - p.d0) / p.finesse;
  return dt * dt * std::exp(-dt) * std::exp(-7.0 / (p.finesse * p.finesse)) *
         std::exp(-p.d0);
}

FinesseOptimum optimize_finesse(double d, double d0, double f_lo, double f_hi) {
  if (!(f_lo > 1.0) || !(f_hi > f_lo))
    throw std::invalid_argument("optimize_finesse: need 1 < f_lo < f_hi");
  auto eta = [&](double f) {
    return analytic_afc_efficiency({d, d0, f});
  };
  double a = f_lo, b = f_hi;
  double c = b - kGolden * (b - a);
  double e = a + kGolden * (b - a);
  double fc = eta(c), fe = eta(e);
  while (b - a > 1e-3) {
    if (fc >= fe) {  // ties toward the smaller finesse
      b = e;
      e = c;
      fe = fc;
      c = b - kGolden * (b - a);
      fc = eta(c);
    } else {
      a = c;
      c = e;
      fc = fe;
      e = a + kGolden * (b - a);
      fe = eta(e);
    }
  }
  const double f = 0.5 * (a + b);
  return {f, eta(f)};
}

double echo_time(double delta_hz) {
  if (!(delta_hz > 0.0))
    throw std::invalid_argument("echo_time: delta_hz must be positive");
  return 1.0 / delta_hz;
}

EchoMetrics extract_echo_efficiency(const TimeTrace& y, const TimeTrace& x_ref,
                                    double t_echo_s, double window_halfwidth_s) {
  if (!(window_halfwidth_s > 0.0))
    throw std::invalid_argument("extract_echo_efficiency: window must be > 0");
  const double e_in = x_ref.energy();
  if (!(e_in > 0.0))
    throw std::invalid_argument("extract_echo_efficiency: empty reference");

  const double t_peak_in = input_peak_time(x_ref);
  const double guard = 1.5 * intensity_fwhm(x_ref);
  const double win_lo = t_echo_s - window_halfwidth_s;
  const double win_hi = t_echo_s + window_halfwidth_s;
  if (win_lo < t_peak_in + guard && win_hi > t_peak_in - guard)
    throw window_overlap_error(
        "extract_echo_efficiency: echo window overlaps the input pulse");

  const std::size_t n = y.samples.size();
  const double t0 = y.grid.t0_s, dt = y.grid.dt_s;
  auto k0 = static_cast<std::ptrdiff_t>(std::ceil((win_lo - t0) / dt));
  auto k1 = static_cast<std::ptrdiff_t>(std::floor((win_hi - t0) / dt));
  if (k1 < 0 || k0 >= static_cast<std::ptrdiff_t>(n))
    throw std::invalid_argument(
        "extract_echo_efficiency: echo window falls outside the trace");
  k0 = std::max<std::ptrdiff_t>(k0, 0);
  k1 = std::min(k1, static_cast<std::ptrdiff_t>(n) - 1);

  std::vector<double> p(n);
  kernels::ops().abs2(p.data(), y.samples.data(), n);
  std::size_t ip = static_cast<std::size_t>(k0);
  for (auto k = k0; k <= k1; ++k)
    if (p[static_cast<std::size_t>(k)] > p[ip]) ip = static_cast<std::size_t>(k);

  double t_peak = y.grid.t(ip);
  if (ip > 0 && ip + 1 < n) {  // parabolic vertex through the three top samples
    const double den = p[ip - 1] - 2.0 * p[ip] + p[ip + 1];
    if (den < 0.0) {
      const double shift = 0.5 * (p[ip - 1] - p[ip + 1]) / den;
      if (std::abs(shift) <= 1.0) t_peak += shift * dt;
    }
  }

  EchoMetrics m;
  m.t_echo_s = t_echo_s;
  m.efficiency = windowed_energy(y, win_lo, win_hi) / e_in;
  m.window_start_s = win_lo;
  m.window_end_s = win_hi;
  m.echo_peak_time_s = t_peak;
  return m;
}

double comb_mean_depth(const AbsorptionSpectrum& abs, const CombSpec& comb) {
  comb.validate();
  const auto centers = comb_peak_centers(comb);
  const double lo = centers.front() - 0.5 * comb.delta_hz;
  const double hi = centers.back() + 0.5 * comb.delta_hz;
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < abs.grid.n_points; ++i) {
    const double nu = abs.grid.nu(i);
    if (nu >= lo && nu <= hi) {
      sum += abs.d_of_nu[i];
      ++count;
    }
  }
  if (count == 0)
    throw std::invalid_argument("comb_mean_depth: comb extent not on the grid");
  return sum / static_cast<double>(count);
}

StorageResult simulate_single_pass_storage(const TimeTrace& pulse,
                                           const AbsorptionSpectrum& abs,
                                           double echo_delta_hz,
                                           double length_m, double nu0_hz,
                                           double n_bg,
                                           const StorageOptions& opt) {
  if (!(echo_delta_hz > 0.0))
    throw std::invalid_argument("storage: echo_delta_hz must be positive");
  PropagationSetup s = prepare_input(pulse, echo_delta_hz, opt);
  if (!same_grid(abs.grid, s.X.grid))
    throw std::invalid_argument(
        "storage: absorption spectrum must live on the pulse's spectral grid");

  const ComplexIndex idx =
      kramers_kronig_index(abs, nu0_hz, n_bg, length_m, opt.kk);
  const auto a = single_pass_amplitude(abs, idx, length_m, nu0_hz);

  SpectrumTrace Y;
  Y.grid = s.X.grid;
  Y.samples.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) Y.samples[i] = a[i] * s.X.samples[i];

  StorageResult res;
  res.output = to_time(Y, pulse.grid.t0_s);
  const double t_echo = s.t_peak_in + echo_time(echo_delta_hz);
  res.metrics =
      extract_echo_efficiency(res.output, pulse, t_echo, s.halfwidth);
  add_secondary_echoes(res.metrics, res.output, pulse.energy(), s.t_peak_in,
                       echo_delta_hz, s.halfwidth);
  return res;
}

StorageResult simulate_single_pass_storage(const TimeTrace& pulse,
                                           const CombSpec& comb,
                                           double length_m, double nu0_hz,
                                           double n_bg,
                                           const StorageOptions& opt) {
  comb.validate();
  // Resolve the tooth width unless the caller pinned a stricter feature size.
  StorageOptions o = opt;
  if (o.kk.min_feature_hz <= 0.0) o.kk.min_feature_hz = comb.gamma_fwhm_hz;

  const SpectrumTrace probe = to_spectrum(pulse);  // fixes the shared grid
  const AbsorptionSpectrum abs = comb_optical_depth(comb, probe.grid);
  return simulate_single_pass_storage(pulse, abs, comb.delta_hz, length_m,
                                      nu0_hz, n_bg, o);
}

CavityStorageResult simulate_cavity_storage(const TimeTrace& pulse,
                                            const CombSpec& comb,
                                            const CavitySpec& cav,
                                            double nu0_hz,
                                            const StorageOptions& opt) {
  comb.validate();
  cav.validate();
  StorageOptions o = opt;
  if (o.kk.min_feature_hz <= 0.0) o.kk.min_feature_hz = comb.gamma_fwhm_hz;
  PropagationSetup s = prepare_input(pulse, comb.delta_hz, o);

  const AbsorptionSpectrum abs = comb_optical_depth(comb, s.X.grid);
  ComplexIndex idx =
      kramers_kronig_index(abs, nu0_hz, cav.n_bg, cav.length_m, o.kk);

  double length = cav.length_m;
  if (o.auto_align) {
    const double target = comb.center_hz - s.X.grid.center_hz;
    const double k_center =
        (comb.center_hz - s.X.grid.nu(0)) / s.X.grid.dnu();
    const auto kc = static_cast<std::size_t>(std::lround(
        std::clamp(k_center, 0.0, static_cast<double>(idx.delta_n.size() - 1))));
    length = align_cavity_length(cav, nu0_hz, target, idx.delta_n[kc]);
    // delta_n scales as 1/L; keep the product delta_n * L exact
    const double rescale = cav.length_m / length;
    for (double& v : idx.delta_n) v *= rescale;
  }

  const auto a = single_pass_amplitude(abs, idx, length, nu0_hz);
  const auto resp =
      cavity_response(s.X.grid, a, cav.r1_power, cav.r2_power);

  SpectrumTrace R, T;
  R.grid = T.grid = s.X.grid;
  R.samples.resize(a.size());
  T.samples.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    R.samples[i] = resp.r_of_nu[i] * s.X.samples[i];
    T.samples[i] = resp.t_of_nu[i] * s.X.samples[i];
  }

  CavityStorageResult res;
  res.reflected = to_time(R, pulse.grid.t0_s);
  res.transmitted = to_time(T, pulse.grid.t0_s);
  res.aligned_length_m = length;

  const double t_echo = s.t_peak_in + echo_time(comb.delta_hz);
  const double eps = cav.mode_coupling;
  res.metrics =
      extract_echo_efficiency(res.reflected, pulse, t_echo, s.halfwidth);
  const double e_in = pulse.energy();
  add_secondary_echoes(res.metrics, res.reflected, e_in, s.t_peak_in,
                       comb.delta_hz, s.halfwidth);
  res.metrics.efficiency *= eps;
  for (auto& se : res.metrics.secondary_echoes) se.efficiency *= eps;
  res.transmitted_echo_efficiency =
      eps * windowed_energy(res.transmitted, res.metrics.window_start_s,
                            res.metrics.window_end_s) / e_in;
  return res;
}

}  // namespace afc
