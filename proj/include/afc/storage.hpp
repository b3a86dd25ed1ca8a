#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "afc/cavity.hpp"
#include "afc/pulses.hpp"
#include "afc/spectral.hpp"

namespace afc {

struct SecondaryEcho {
  int order = 0;            // echo index m >= 2 at m/delta
  double t_s = 0.0;         // window center (absolute trace time)
  double efficiency = 0.0;  // windowed energy / input energy
};

struct EchoMetrics {
  double t_echo_s = 0.0;           // expected echo time (absolute)
  double efficiency = 0.0;         // energy in the echo window / input energy
  double window_start_s = 0.0;
  double window_end_s = 0.0;
  double echo_peak_time_s = 0.0;   // measured argmax |y|^2 inside the window
  std::vector<SecondaryEcho> secondary_echoes;
};

struct AfcParams {
  double d = 0.0;
  double d0 = 0.0;
  double finesse = 2.0;

  void validate() const;
};

// eta = dt^2 e^{-dt} e^{-7/F^2} e^{-d0}, dt = (d-d0)/F
double analytic_afc_efficiency(const AfcParams& p);

struct FinesseOptimum {
  double finesse = 0.0;
  double efficiency = 0.0;
};

// Golden-section maximization over F in [f_lo, f_hi] to dF < 1e-3,
// ties broken toward smaller F.
FinesseOptimum optimize_finesse(double d, double d0, double f_lo, double f_hi);

double echo_time(double delta_hz);  // 1/delta

struct StorageOptions {
  KramersKronigOptions kk;
  double window_halfwidth_s = 0.0;  // 0 = 1.5 x measured input intensity FWHM
  bool auto_align = true;           // cavity only: trim length onto resonance
};

struct StorageResult {
  TimeTrace output;   // free space: transmitted field. cavity: in-mode reflected field
  EchoMetrics metrics;
};

struct CavityStorageResult {
  TimeTrace reflected;    // in-mode field at the reflection port
  TimeTrace transmitted;  // field leaking through the back mirror
  EchoMetrics metrics;    // reflection-port echo, scaled by mode coupling
  double transmitted_echo_efficiency = 0.0;
  double aligned_length_m = 0.0;
};

// Y(nu) = exp(-d/2 + i Phi) X(nu), Phi from the Kramers-Kronig index; the
// output contains echoes at multiples of 1/delta after the input peak.
StorageResult simulate_single_pass_storage(const TimeTrace& pulse,
                                           const CombSpec& comb,
                                           double length_m, double nu0_hz,
                                           double n_bg,
                                           const StorageOptions& opt = {});

// Same propagation for an already-built absorption spectrum (e.g. produced by
// the pumping module). echo_delta_hz tells the metrics where to look.
StorageResult simulate_single_pass_storage(const TimeTrace& pulse,
                                           const AbsorptionSpectrum& abs,
                                           double echo_delta_hz,
                                           double length_m, double nu0_hz,
                                           double n_bg,
                                           const StorageOptions& opt = {});

CavityStorageResult simulate_cavity_storage(const TimeTrace& pulse,
                                            const CombSpec& comb,
                                            const CavitySpec& cav,
                                            double nu0_hz,
                                            const StorageOptions& opt = {});

// efficiency = int_window |y|^2 dt / int |x_ref|^2 dt
EchoMetrics extract_echo_efficiency(const TimeTrace& y, const TimeTrace& x_ref,
                                    double t_echo_s, double window_halfwidth_s);

// Mean optical depth over the comb's occupied extent (the quantity the
// matching condition sees for spectrally structured absorbers).
double comb_mean_depth(const AbsorptionSpectrum& abs, const CombSpec& comb);

}  // namespace afc
