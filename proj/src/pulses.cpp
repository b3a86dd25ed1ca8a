#include "afc/pulses.hpp"

#include <cmath>
#include <stdexcept>

#include "afc/errors.hpp"
#include "afc/fft.hpp"
#include "afc/kernels.hpp"

namespace afc {
namespace {

constexpr double kTwoLn2 = 1.3862943611198906;   // 2 ln 2
constexpr double kEdgeTol = 1e-6;                // max envelope/peak at grid edges

double ln_cosh(double x) {
  const double ax = std::abs(x);
  // cosh overflows past ~710; asymptote is |x| - ln 2
  if (ax > 30.0) return ax - 0.6931471805599453;
  return std::log(std::cosh(ax));
}

void check_edges(double edge0, double edge1, const char* what) {
  if (edge0 > kEdgeTol || edge1 > kEdgeTol)
    throw truncation_error(std::string(what) +
                           ": envelope exceeds 1e-6 of peak at the grid edge; "
                           "enlarge the time grid");
}

}  // namespace

double TimeTrace::energy() const {
  return kernels::ops().energy(samples.data(), samples.size()) * grid.dt_s;
}

double SpectrumTrace::energy() const {
  return kernels::ops().energy(samples.data(), samples.size()) * grid.dnu();
}

TimeTrace gaussian_waveform(const GaussianPulseSpec& spec, const TimeGrid& tg) {
  if (!(spec.t_fwhm_s > 0.0))
    throw std::invalid_argument("gaussian_waveform: t_fwhm_s must be positive");
  make_time_grid(tg.dt_s, tg.n_samples, tg.t0_s);  // re-validate

  const double inv_tau2 = 1.0 / (spec.t_fwhm_s * spec.t_fwhm_s);
  auto envelope = [&](double t) {
    const double u = t - spec.t_center_s;
    return std::exp(-kTwoLn2 * u * u * inv_tau2);
  };
  check_edges(envelope(tg.t(0)), envelope(tg.t(tg.n_samples - 1)),
              "gaussian_waveform");

  TimeTrace out;
  out.grid = tg;
  out.samples.resize(tg.n_samples);
  const double w = 2.0 * M_PI * spec.carrier_offset_hz;
  for (std::size_t k = 0; k < tg.n_samples; ++k) {
    const double u = tg.t(k) - spec.t_center_s;
    const double a = spec.amplitude * std::exp(-kTwoLn2 * u * u * inv_tau2);
    out.samples[k] = std::complex<double>(a * std::cos(w * u), a * std::sin(w * u));
  }
  return out;
}

TimeTrace sechyp_waveform(const SechypPulseSpec& spec, const TimeGrid& tg) {
  if (!(spec.t_fwhm_s > 0.0))
    throw std::invalid_argument("sechyp_waveform: t_fwhm_s must be positive");
  if (spec.f_width_hz < 0.0)
    throw std::invalid_argument("sechyp_waveform: f_width_hz must be >= 0");
  make_time_grid(tg.dt_s, tg.n_samples, tg.t0_s);

  // amplitude FWHM: sech(beta t) = 1/2 at t = +-t_fwhm/2 -> beta = 2 ln(2+sqrt3)/t_fwhm
  const double beta = 2.0 * std::log(2.0 + std::sqrt(3.0)) / spec.t_fwhm_s;
  auto envelope = [&](double t) {
    return 1.0 / std::cosh(std::min(700.0, std::abs(beta * (t - spec.t_center_s))));
  };
  check_edges(envelope(tg.t(0)), envelope(tg.t(tg.n_samples - 1)),
              "sechyp_waveform");

  TimeTrace out;
  out.grid = tg;
  out.samples.resize(tg.n_samples);
  const double chirp = spec.f_width_hz / (2.0 * beta);
  for (std::size_t k = 0; k < tg.n_samples; ++k) {
    const double u = tg.t(k) - spec.t_center_s;
    const double a = spec.amplitude * envelope(tg.t(k));
    // instantaneous frequency nu_c + (f_width/2) tanh(beta u)
    const double phi =
        2.0 * M_PI * (spec.center_hz * u + chirp * ln_cosh(beta * u));
    out.samples[k] = std::complex<double>(a * std::cos(phi), a * std::sin(phi));
  }
  return out;
}

// Analysis kernel e^{+i 2 pi nu t} (physics convention; see TimeTrace note).
// Implemented as X(nu_s) = dt e^{i 2 pi nu_s t0} FFT_+[(-1)^k x_k](s) with the
// (-1)^k factor shifting the frequency origin to the array center.
SpectrumTrace to_spectrum(const TimeTrace& x) {
  const std::size_t n = x.samples.size();
  if (!is_pow2(n) || n < 16)
    throw std::invalid_argument("to_spectrum: length must be a power of two >= 16");
  const double dt = x.grid.dt_s;
  const double dnu = 1.0 / (dt * static_cast<double>(n));

  std::vector<std::complex<double>> buf(n);
  for (std::size_t k = 0; k < n; ++k)
    buf[k] = (k & 1) ? -x.samples[k] : x.samples[k];
  fft_pow2(buf, +1);

  SpectrumTrace X;
  X.grid = FrequencyGrid{0.0, dnu * static_cast<double>(n), n};
  X.samples.resize(n);
  const double half_n = 0.5 * static_cast<double>(n);
  for (std::size_t s = 0; s < n; ++s) {
    const double nu = (static_cast<double>(s) - half_n) * dnu;
    const double ph = 2.0 * M_PI * nu * x.grid.t0_s;
    X.samples[s] = buf[s] * dt * std::complex<double>(std::cos(ph), std::sin(ph));
  }
  return X;
}

TimeTrace to_time(const SpectrumTrace& X, double t0_s) {
  const std::size_t n = X.samples.size();
  if (!is_pow2(n) || n < 16)
    throw std::invalid_argument("to_time: length must be a power of two >= 16");
  const double dnu = X.grid.dnu();
  const double dt = 1.0 / (dnu * static_cast<double>(n));

  std::vector<std::complex<double>> buf(n);
  const double half_n = 0.5 * static_cast<double>(n);
  for (std::size_t s = 0; s < n; ++s) {
    const double nu = (static_cast<double>(s) - half_n) * dnu;
    const double ph = -2.0 * M_PI * nu * t0_s;
    buf[s] = X.samples[s] * std::complex<double>(std::cos(ph), std::sin(ph));
  }
  fft_pow2(buf, -1);

  TimeTrace x;
  x.grid = TimeGrid{dt, n, t0_s};
  x.samples.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::complex<double> v = (k & 1) ? -buf[k] : buf[k];
    x.samples[k] = v * dnu;
  }
  return x;
}

double intensity_fwhm(const TimeTrace& x) {
  const std::size_t n = x.samples.size();
  if (n < 3) throw std::invalid_argument("intensity_fwhm: trace too short");
  std::vector<double> p(n);
  kernels::ops().abs2(p.data(), x.samples.data(), n);
  std::size_t ip = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (p[i] > p[ip]) ip = i;
  const double half = 0.5 * p[ip];
  if (half <= 0.0) throw std::invalid_argument("intensity_fwhm: empty trace");

  double left = x.grid.t(0), right = x.grid.t(n - 1);
  for (std::size_t i = ip; i-- > 0;) {
    if (p[i] <= half) {
      const double f = (half - p[i]) / (p[i + 1] - p[i]);
      left = x.grid.t(i) + f * x.grid.dt_s;
      break;
    }
  }
  for (std::size_t i = ip + 1; i < n; ++i) {
    if (p[i] <= half) {
      const double f = (p[i - 1] - half) / (p[i - 1] - p[i]);
      right = x.grid.t(i - 1) + f * x.grid.dt_s;
      break;
    }
  }
  return right - left;
}

}  // namespace afc
