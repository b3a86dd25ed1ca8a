#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "afc/grid.hpp"

namespace afc {

// Complex field envelope on a uniform time axis.
// Envelope convention: the physical field is Re{ x(t) e^{-i 2 pi nu0 t} }
// (physics sign), so the transform pair below analyzes with e^{+i 2 pi nu t}.
// A carrier_offset of +delta therefore lands at grid frequency -delta; all
// built-in experiments keep pulses and structures co-centered at 0.
struct TimeTrace {
  TimeGrid grid;
  std::vector<std::complex<double>> samples;

  double energy() const;  // sum |x|^2 dt
};

struct SpectrumTrace {
  FrequencyGrid grid;  // center 0, ascending, dnu = 1/(n dt)
  std::vector<std::complex<double>> samples;

  double energy() const;  // sum |X|^2 dnu
};

struct GaussianPulseSpec {
  double t_fwhm_s = 0.0;  // intensity FWHM
  double t_center_s = 0.0;
  double carrier_offset_hz = 0.0;
  double amplitude = 1.0;
};

struct SechypPulseSpec {
  double t_fwhm_s = 0.0;   // amplitude FWHM
  double f_width_hz = 0.0; // total chirp width
  double center_hz = 0.0;  // chirp center
  double t_center_s = 0.0;
  double amplitude = 1.0;
};

// x(t) = A exp(-2 ln2 (t-tc)^2 / tau^2) exp(i 2 pi delta (t-tc))
TimeTrace gaussian_waveform(const GaussianPulseSpec& spec, const TimeGrid& tg);

// x(t) = A sech(beta (t-tc)) e^{i phi}, beta = 2 ln(2+sqrt3)/t_fwhm,
// phi = 2 pi [ nu_c (t-tc) + f_width/(2 beta) ln cosh(beta (t-tc)) ]
TimeTrace sechyp_waveform(const SechypPulseSpec& spec, const TimeGrid& tg);

// X(nu_m) = dt * sum_k x_k e^{+2 pi i nu_m t_k}   (exact inverse pair)
// x_k     = dnu * sum_m X_m e^{-2 pi i nu_m t_k}
SpectrumTrace to_spectrum(const TimeTrace& x);
TimeTrace to_time(const SpectrumTrace& X, double t0_s = 0.0);

// Intensity FWHM of |x|^2 by linear interpolation around the peak.
double intensity_fwhm(const TimeTrace& x);

}  // namespace afc
