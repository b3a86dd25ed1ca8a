#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "afc/pulses.hpp"
#include "afc/spectral.hpp"

namespace afc {

// Three ground + three excited hyperfine levels. Splittings are the two gaps
// between adjacent levels, low to high. branching[e][g] is the decay
// probability from excited e to ground g (rows sum to 1); rel_strength[g][e]
// are relative oscillator strengths, max-normalized to 1.
struct HyperfineSystem {
  std::array<double, 2> ground_splittings_hz{};
  std::array<double, 2> excited_splittings_hz{};
  std::array<std::array<double, 3>, 3> branching{};
  std::array<std::array<double, 3>, 3> rel_strength{};
  double t1_s = 0.0;

  void validate() const;
  // Transition offset of (g, e) relative to the g=0 -> e=0 transition of the
  // same ion: shift = E_e - E_g.
  double shift_hz(int g, int e) const;
};

// Placeholder level structure for development and demos; the real values are
// a required user input (see README), these are not measured numbers.
HyperfineSystem placeholder_hyperfine_system();

// Struct-of-arrays over inhomogeneous detuning classes. detuning[k] is the
// class offset of the g1->e1 transition; weights follow the line shape and
// sum to 1; populations per class sum to weight[k].
struct IonClassEnsemble {
  std::vector<double> detuning_hz;
  std::vector<double> weight;
  std::array<std::vector<double>, 3> ground;   // populations per ground state
  std::array<std::vector<double>, 3> excited;  // per excited state

  std::size_t n_classes() const { return detuning_hz.size(); }
  double class_total(std::size_t k) const;
  double total_population() const;
};

struct PumpPulseEntry {
  SechypPulseSpec pulse;   // f_width_hz sets the addressed window; center_hz its position
  int source_ground = 0;   // 0-based level indices
  int target_excited = 0;
  double transfer_p = 0.0; // fraction of resonant source population excited per pulse
};

struct PumpSequence {
  std::vector<PumpPulseEntry> pulses;
  std::size_t repetitions = 1;
  double wait_s = 0.0;  // must be >= 5 * t1 (full relaxation between pulses)

  void validate(const HyperfineSystem& sys) const;
};

// Recipe for carving a comb: pump away the source-ground population
// everywhere inside the pit except in a keep zone around each peak. Gaps
// between peaks are tiled with burn-width windows, the two flanks outside the
// comb with (wider) clean-width windows.
struct CombPreparationPlan {
  std::size_t n_peaks = 4;
  double delta_hz = 0.0;        // peak spacing
  double center_hz = 0.0;       // comb center on the probed transition
  double peak_keep_hz = 0.0;    // zone left untouched around each peak
  double burn_window_hz = 0.0;  // f_width inside the comb
  double clean_window_hz = 0.0; // f_width on the flanks
  double pit_halfwidth_hz = 0.0;  // cleaned reach beyond the outer peaks
  double burn_t_fwhm_s = 16.8e-6;
  double clean_t_fwhm_s = 20e-6;
  double transfer_p = 0.95;
  std::size_t repetitions = 50;
  int source_ground = 0;
  int target_excited = 0;
  double wait_s = 500e-6;
};

std::vector<double> plan_peak_centers(const CombPreparationPlan& plan);
PumpSequence comb_preparation_sequence(const CombPreparationPlan& plan);

IonClassEnsemble init_ensemble(const InhomogeneousLine& line,
                               std::size_t n_classes,
                               const HyperfineSystem& sys);

void apply_pump_pulse(IonClassEnsemble& ens, const PumpPulseEntry& entry,
                      const HyperfineSystem& sys);

void run_sequence(IonClassEnsemble& ens, const PumpSequence& seq,
                  const HyperfineSystem& sys);

// Same mechanics; warns if a window center sits on top of a comb peak center
// (peak_centers_hz may be empty to skip the check).
void clean_background(IonClassEnsemble& ens, const PumpSequence& cleaning,
                      const HyperfineSystem& sys,
                      const std::vector<double>& peak_centers_hz);

// d(nu) = d_scale * sum_classes sum_{g,e} pop[g] f[g][e] S_hom(nu - det - shift)
// with a Lorentzian S_hom of FWHM homogeneous_fwhm_hz.
AbsorptionSpectrum ensemble_absorption(const IonClassEnsemble& ens,
                                       const FrequencyGrid& grid,
                                       const HyperfineSystem& sys,
                                       double d_scale,
                                       double homogeneous_fwhm_hz);

// Measured position of one absorption peak near nu_guess_hz: the centroid of
// the samples within +-window_halfwidth_hz that reach at least half of the
// local maximum. Prepared peaks are plateaus riding a tilted background, so
// this is far less biased than the position of the largest sample. Falls back
// to nu_guess_hz if the window holds no positive absorption.
double measure_peak_position(const std::vector<double>& d_of_nu,
                             const FrequencyGrid& grid,
                             double nu_guess_hz,
                             double window_halfwidth_hz);

}  // namespace afc
