#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "afc/grid.hpp"
#include "afc/pulses.hpp"
#include "afc/spectral.hpp"

namespace afc {

// Reflection-coated crystal as a two-mirror cavity. mode_coupling is the
// fraction of input power entering the cavity spatial mode; the remainder
// bypasses the cavity (wedge / transverse-mode mismatch) and reflects back.
struct CavitySpec {
  double length_m = 0.0;
  double r1_power = 0.0;  // input coupler R1
  double r2_power = 0.0;  // back mirror R2
  double n_bg = 1.0;
  double mode_coupling = 1.0;  // epsilon in (0, 1]

  void validate() const;
};

struct CavityResponse {
  FrequencyGrid grid;
  std::vector<std::complex<double>> r_of_nu;
  std::vector<std::complex<double>> t_of_nu;
};

struct CavityMode {
  double nu_res_hz = 0.0;    // grid-relative resonance position
  double local_fsr_hz = 0.0; // c0 / (2 L n_g(nu_res))
  double linewidth_hz = 0.0; // local_fsr / cavity finesse (scale, not a fit)
};

// a(nu) = exp(-d/2) exp(i 2 pi nu_abs (n_bg + delta_n) L / c0), nu_abs = nu0 + nu - grid center
std::vector<std::complex<double>> single_pass_amplitude(
    const AbsorptionSpectrum& abs, const ComplexIndex& idx, double length_m,
    double nu0_hz);

// r = (-r1 + r2 a^2) / (1 - r1 r2 a^2); t = sqrt((1-R1)(1-R2)) a / (1 - r1 r2 a^2)
CavityResponse cavity_response(const FrequencyGrid& grid,
                               const std::vector<std::complex<double>>& a,
                               double r1_power, double r2_power);

// Matching condition R1 = e^{-2 d} for single-pass depth d.
double impedance_matched_r1(double d_single_pass);

double empty_fsr(const CavitySpec& cav);

// Resonances of round-trip phase 4 pi nu_abs (n_bg+delta_n) L / c0 = 0 mod 2pi,
// bracketed on the grid and bisected to dnu/100.
std::vector<CavityMode> dispersive_mode_structure(const ComplexIndex& idx,
                                                  const CavitySpec& cav);

// Smallest length change that puts a resonance exactly at grid frequency
// target_hz (given the medium's delta_n there). Returns the adjusted length.
double align_cavity_length(const CavitySpec& cav, double nu0_hz,
                           double target_hz, double delta_n_at_target);

struct ReflectionScanPoint {
  double offset_hz = 0.0;
  double reflected_fraction = 0.0;
};

// Probe the line at each offset from line center with the cavity re-tuned to
// resonance there (dip envelope): fraction = eps * coupled + (1 - eps),
// coupled = int |r X|^2 / int |X|^2 over the probe spectrum.
std::vector<ReflectionScanPoint> reflection_scan(
    const InhomogeneousLine& line, const CavitySpec& cav, double nu0_hz,
    const GaussianPulseSpec& probe, const std::vector<double>& scan_offsets_hz);

}  // namespace afc
