#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "afc/grid.hpp"

namespace afc {

enum class PeakShape { gaussian, lorentzian, square };

PeakShape parse_peak_shape(const std::string& s);
const char* peak_shape_name(PeakShape s);

// Periodic comb of absorption peaks: spacing delta_hz, FWHM gamma_fwhm_hz,
// peak optical depth peak_d on a background_d0 floor.
struct CombSpec {
  std::size_t n_peaks = 1;
  double delta_hz = 0.0;
  double gamma_fwhm_hz = 0.0;
  double peak_d = 0.0;
  double background_d0 = 0.0;
  PeakShape shape = PeakShape::gaussian;
  double center_hz = 0.0;

  double finesse() const { return delta_hz / gamma_fwhm_hz; }
  void validate() const;  // throws std::invalid_argument
};

struct InhomogeneousLine {
  double center_hz = 0.0;
  double fwhm_hz = 0.0;
  double center_d = 0.0;  // optical depth at line center

  void validate() const;
};

// Optical depth d(nu) = alpha(nu) * L, dimensionless, on a uniform grid.
struct AbsorptionSpectrum {
  FrequencyGrid grid;
  std::vector<double> d_of_nu;
};

// Refractive-index deviation from the n_bg background, real-valued.
struct ComplexIndex {
  FrequencyGrid grid;
  std::vector<double> delta_n;
  double n_bg = 1.0;
  double nu0_hz = 0.0;  // absolute carrier for narrowband conversions
};

struct KramersKronigOptions {
  std::size_t pad_factor = 16;  // zero-padding multiple (>= 4)
  double taper_frac = 0.05;     // raised-cosine edge taper fraction per side
  double min_feature_hz = 0.0;  // if > 0, require >= 8 grid points across it
};

// Peak positions, symmetric about center_hz.
std::vector<double> comb_peak_centers(const CombSpec& comb);

AbsorptionSpectrum comb_optical_depth(const CombSpec& comb,
                                      const FrequencyGrid& grid);
AbsorptionSpectrum inhomogeneous_depth(const InhomogeneousLine& line,
                                       const FrequencyGrid& grid);

// Discrete Hilbert transform H[f](nu) = (1/pi) PV int f(nu')/(nu'-nu) dnu'
// via the analytic-signal method (FFT multiplier) with zero padding and an
// edge taper. Exposed for tests; kramers_kronig_index is the physics wrapper.
std::vector<double> hilbert_transform(const std::vector<double>& f,
                                      std::size_t pad_factor = 16,
                                      double taper_frac = 0.05);

// Narrowband model: chi''(nu) = d(nu)/L * c0/(2 pi nu0); delta_n = H[chi'']/2.
ComplexIndex kramers_kronig_index(const AbsorptionSpectrum& abs, double nu0_hz,
                                  double n_bg, double length_m,
                                  const KramersKronigOptions& opt = {});

// Exact Hilbert pair of the Lorentzian line (used by the cavity scan, and as
// the oracle the numerical route is tested against):
//   delta_n(nu) = c0*D/(4 pi nu0 L) * (G/2)(nu_c-nu) / ((nu-nu_c)^2+(G/2)^2)
ComplexIndex lorentzian_line_index(const InhomogeneousLine& line,
                                   const FrequencyGrid& grid, double nu0_hz,
                                   double n_bg, double length_m);

// n_g(nu) = (n_bg + delta_n) + nu_abs * d(delta_n)/d(nu), central differences.
std::vector<double> group_index(const ComplexIndex& idx);

}  // namespace afc
