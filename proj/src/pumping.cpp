#include "afc/pumping.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "afc/errors.hpp"
#include "afc/kernels.hpp"

namespace afc {
namespace {

void check_level(int g, int e) {
  if (g < 0 || g > 2 || e < 0 || e > 2)
    throw std::invalid_argument("pumping: level indices must be 0, 1 or 2");
}

std::array<double, 3> level_energies(const std::array<double, 2>& gaps) {
  return {0.0, gaps[0], gaps[0] + gaps[1]};
}

}  // namespace

void HyperfineSystem::validate() const {
  for (double s : ground_splittings_hz)
    if (!(s > 0.0))
      throw std::invalid_argument("hyperfine: ground splittings must be > 0");
  for (double s : excited_splittings_hz)
    if (!(s > 0.0))
      throw std::invalid_argument("hyperfine: excited splittings must be > 0");
  double f_max = 0.0;
  for (int e = 0; e < 3; ++e) {
    double row = 0.0;
    for (int g = 0; g < 3; ++g) {
      const double b = branching[e][g];
      if (b < 0.0 || b > 1.0)
        throw std::invalid_argument("hyperfine: branching outside [0, 1]");
      row += b;
      const double f = rel_strength[g][e];
      if (f < 0.0 || f > 1.0)
        throw std::invalid_argument("hyperfine: rel_strength outside [0, 1]");
      f_max = std::max(f_max, f);
    }
    if (std::abs(row - 1.0) > 1e-12)
      throw std::invalid_argument("hyperfine: branching rows must sum to 1");
  }
  if (std::abs(f_max - 1.0) > 1e-9)
    throw std::invalid_argument("hyperfine: rel_strength must be max-normalized");
  if (!(t1_s > 0.0))
    throw std::invalid_argument("hyperfine: t1_s must be positive");
}

double HyperfineSystem::shift_hz(int g, int e) const {
  check_level(g, e);
  const auto eg = level_energies(ground_splittings_hz);
  const auto ee = level_energies(excited_splittings_hz);
  return ee[static_cast<std::size_t>(e)] - eg[static_cast<std::size_t>(g)];
}

// Splittings are deliberately large compared with the MHz-scale structures the
// demos carve, so cross-transition replicas land outside the probed window.
HyperfineSystem placeholder_hyperfine_system() {
  HyperfineSystem sys;
  sys.ground_splittings_hz = {30e6, 45e6};
  sys.excited_splittings_hz = {8e6, 12e6};
  sys.branching = {{{0.85, 0.10, 0.05}, {0.10, 0.80, 0.10}, {0.05, 0.10, 0.85}}};
  sys.rel_strength = {{{1.0, 0.08, 0.03}, {0.08, 0.30, 0.08}, {0.03, 0.08, 0.30}}};
  sys.t1_s = 100e-6;
  return sys;
}

double IonClassEnsemble::class_total(std::size_t k) const {
  double s = 0.0;
  for (int i = 0; i < 3; ++i) s += ground[i][k] + excited[i][k];
  return s;
}

double IonClassEnsemble::total_population() const {
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < detuning_hz.size(); ++k)
      s += ground[i][k] + excited[i][k];
  return s;
}

void PumpSequence::validate(const HyperfineSystem& sys) const {
  if (pulses.empty())
    throw std::invalid_argument("pump sequence: no pulses");
  if (repetitions < 1)
    throw std::invalid_argument("pump sequence: repetitions must be >= 1");
  if (!(wait_s >= 5.0 * sys.t1_s))
    throw std::invalid_argument(
        "pump sequence: wait_s must be >= 5 * t1 (full relaxation model)");
  for (const auto& p : pulses) {
    check_level(p.source_ground, p.target_excited);
    if (!(p.pulse.f_width_hz >= 0.0))
      throw std::invalid_argument("pump sequence: pulse f_width_hz must be >= 0");
    if (p.transfer_p < 0.0 || p.transfer_p > 1.0)
      throw std::invalid_argument("pump sequence: transfer_p outside [0, 1]");
  }
}

std::vector<double> plan_peak_centers(const CombPreparationPlan& plan) {
  if (plan.n_peaks < 2)
    throw std::invalid_argument("comb preparation: need at least two peaks");
  std::vector<double> c(plan.n_peaks);
  const double mid = 0.5 * static_cast<double>(plan.n_peaks - 1);
  for (std::size_t k = 0; k < plan.n_peaks; ++k)
    c[k] = plan.center_hz + (static_cast<double>(k) - mid) * plan.delta_hz;
  return c;
}

namespace {

// Tile [lo, hi] with adjacent windows no wider than max_width.
void tile_interval(std::vector<PumpPulseEntry>& out, double lo, double hi,
                   double max_width, double t_fwhm,
                   const CombPreparationPlan& plan) {
  if (!(hi > lo)) return;
  const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / max_width));
  const double w = (hi - lo) / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    PumpPulseEntry e;
    e.pulse.t_fwhm_s = t_fwhm;
    e.pulse.f_width_hz = w;
    e.pulse.center_hz = lo + (static_cast<double>(j) + 0.5) * w;
    e.source_ground = plan.source_ground;
    e.target_excited = plan.target_excited;
    e.transfer_p = plan.transfer_p;
    out.push_back(e);
  }
}

}  // namespace

PumpSequence comb_preparation_sequence(const CombPreparationPlan& plan) {
  if (!(plan.delta_hz > 0.0) || !(plan.peak_keep_hz > 0.0) ||
      !(plan.burn_window_hz > 0.0) || !(plan.clean_window_hz > 0.0))
    throw std::invalid_argument("comb preparation: widths must be positive");
  if (!(plan.peak_keep_hz < plan.delta_hz))
    throw std::invalid_argument(
        "comb preparation: keep zone must be narrower than the spacing");
  const auto peaks = plan_peak_centers(plan);

  PumpSequence seq;
  seq.repetitions = plan.repetitions;
  seq.wait_s = plan.wait_s;
  const double keep = 0.5 * plan.peak_keep_hz;
  if (plan.pit_halfwidth_hz > 0.0)
    tile_interval(seq.pulses, peaks.front() - plan.pit_halfwidth_hz,
                  peaks.front() - keep, plan.clean_window_hz,
                  plan.clean_t_fwhm_s, plan);
  for (std::size_t k = 0; k + 1 < peaks.size(); ++k)
    tile_interval(seq.pulses, peaks[k] + keep, peaks[k + 1] - keep,
                  plan.burn_window_hz, plan.burn_t_fwhm_s, plan);
  if (plan.pit_halfwidth_hz > 0.0)
    tile_interval(seq.pulses, peaks.back() + keep,
                  peaks.back() + plan.pit_halfwidth_hz, plan.clean_window_hz,
                  plan.clean_t_fwhm_s, plan);
  return seq;
}

IonClassEnsemble init_ensemble(const InhomogeneousLine& line,
                               std::size_t n_classes,
                               const HyperfineSystem& sys) {
  line.validate();
  sys.validate();
  if (n_classes < 100)
    throw std::invalid_argument(
        "init_ensemble: need at least 100 detuning classes");

  IonClassEnsemble ens;
  ens.detuning_hz.resize(n_classes);
  ens.weight.resize(n_classes);
  const double span = 6.0 * line.fwhm_hz;  // +-3 FWHM covers the line body
  const double hw = 0.5 * line.fwhm_hz;
  double wsum = 0.0;
  for (std::size_t k = 0; k < n_classes; ++k) {
    const double x = (static_cast<double>(k) / static_cast<double>(n_classes - 1) -
                      0.5) * span;
    ens.detuning_hz[k] = line.center_hz + x;
    ens.weight[k] = hw * hw / (x * x + hw * hw);
    wsum += ens.weight[k];
  }
  for (auto& w : ens.weight) w /= wsum;

  for (int i = 0; i < 3; ++i) {
    ens.ground[i].resize(n_classes);
    ens.excited[i].assign(n_classes, 0.0);
    for (std::size_t k = 0; k < n_classes; ++k)
      ens.ground[i][k] = ens.weight[k] / 3.0;
  }
  return ens;
}

namespace {

void relax(IonClassEnsemble& ens, const HyperfineSystem& sys) {
  double b[9];
  for (int e = 0; e < 3; ++e)
    for (int g = 0; g < 3; ++g) b[3 * e + g] = sys.branching[e][g];
  kernels::ops().relax_excited(ens.ground[0].data(), ens.ground[1].data(),
                               ens.ground[2].data(), ens.excited[0].data(),
                               ens.excited[1].data(), ens.excited[2].data(),
                               ens.n_classes(), b);
}

}  // namespace

void apply_pump_pulse(IonClassEnsemble& ens, const PumpPulseEntry& entry,
                      const HyperfineSystem& sys) {
  check_level(entry.source_ground, entry.target_excited);
  if (!(entry.pulse.f_width_hz >= 0.0))
    throw std::invalid_argument("apply_pump_pulse: f_width_hz must be >= 0");
  if (entry.transfer_p < 0.0 || entry.transfer_p > 1.0)
    throw std::invalid_argument("apply_pump_pulse: transfer_p outside [0, 1]");

  // Class k is addressed when its (g, e) transition falls inside the pulse's
  // frequency window: |det_k + shift(g,e) - center| <= width / 2.
  const double shift = sys.shift_hz(entry.source_ground, entry.target_excited);
  const double lo = entry.pulse.center_hz - shift - 0.5 * entry.pulse.f_width_hz;
  const double hi = entry.pulse.center_hz - shift + 0.5 * entry.pulse.f_width_hz;
  kernels::ops().pump_window(
      ens.ground[static_cast<std::size_t>(entry.source_ground)].data(),
      ens.excited[static_cast<std::size_t>(entry.target_excited)].data(),
      ens.detuning_hz.data(), ens.n_classes(), lo, hi, entry.transfer_p);
  relax(ens, sys);  // the >= 5 t1 wait empties the excited state completely
}

void run_sequence(IonClassEnsemble& ens, const PumpSequence& seq,
                  const HyperfineSystem& sys) {
  seq.validate(sys);
  for (std::size_t rep = 0; rep < seq.repetitions; ++rep)
    for (const auto& p : seq.pulses) apply_pump_pulse(ens, p, sys);
}

void clean_background(IonClassEnsemble& ens, const PumpSequence& cleaning,
                      const HyperfineSystem& sys,
                      const std::vector<double>& peak_centers_hz) {
  for (const auto& p : cleaning.pulses) {
    for (const double c : peak_centers_hz) {
      if (std::abs(p.pulse.center_hz - c) <= 0.5 * p.pulse.f_width_hz) {
        warn("cleaning window overlaps a comb peak; the structure will erode");
        break;
      }
    }
  }
  run_sequence(ens, cleaning, sys);
}

AbsorptionSpectrum ensemble_absorption(const IonClassEnsemble& ens,
                                       const FrequencyGrid& grid,
                                       const HyperfineSystem& sys,
                                       double d_scale,
                                       double homogeneous_fwhm_hz) {
  sys.validate();
  if (!(d_scale > 0.0))
    throw std::invalid_argument("ensemble_absorption: d_scale must be > 0");
  if (!(homogeneous_fwhm_hz > 0.0))
    throw std::invalid_argument("ensemble_absorption: homogeneous width <= 0");
  if (grid.dnu() > homogeneous_fwhm_hz / 8.0)
    throw resolution_error(
        "ensemble_absorption: need >= 8 grid points across the homogeneous "
        "linewidth");

  AbsorptionSpectrum out;
  out.grid = grid;
  out.d_of_nu.assign(grid.n_points, 0.0);
  const auto nu = grid.axis();
  const std::size_t m = ens.n_classes();

  std::vector<double> centers(m), weights(m);
  const auto& k = kernels::ops();
  for (int g = 0; g < 3; ++g) {
    for (int e = 0; e < 3; ++e) {
      const double f = sys.rel_strength[g][e];
      if (f <= 0.0) continue;
      const double shift = sys.shift_hz(g, e);
      for (std::size_t i = 0; i < m; ++i) {
        centers[i] = ens.detuning_hz[i] + shift;
        weights[i] = d_scale * f * ens.ground[static_cast<std::size_t>(g)][i];
      }
      k.accum_peaks_lorentzian(out.d_of_nu.data(), nu.data(), grid.n_points,
                               centers.data(), weights.data(), m,
                               homogeneous_fwhm_hz, 1.0);
    }
  }
  return out;
}

double measure_peak_position(const std::vector<double>& d_of_nu,
                             const FrequencyGrid& grid,
                             double nu_guess_hz,
                             double window_halfwidth_hz) {
  if (d_of_nu.size() != grid.n_points)
    throw std::invalid_argument(
        "measure_peak_position: spectrum length does not match the grid");
  if (!(window_halfwidth_hz > 0.0))
    throw std::invalid_argument(
        "measure_peak_position: window halfwidth must be > 0");

  double d_max = 0.0;
  for (std::size_t i = 0; i < grid.n_points; ++i)
    if (std::abs(grid.nu(i) - nu_guess_hz) <= window_halfwidth_hz)
      d_max = std::max(d_max, d_of_nu[i]);
  if (d_max <= 0.0) return nu_guess_hz;

  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    if (std::abs(grid.nu(i) - nu_guess_hz) > window_halfwidth_hz) continue;
    if (d_of_nu[i] < 0.5 * d_max) continue;
    num += grid.nu(i) * d_of_nu[i];
    den += d_of_nu[i];
  }
  return num / den;
}

}  // namespace afc
