#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "afc/errors.hpp"
#include "afc/spectral.hpp"

using namespace afc;

namespace {

struct WarningCatcher {
  std::vector<std::string> messages;
  WarningCatcher() {
    set_warning_handler([this](const std::string& m) { messages.push_back(m); });
  }
  ~WarningCatcher() { set_warning_handler({}); }
  bool saw(const std::string& needle) const {
    return std::any_of(messages.begin(), messages.end(), [&](const auto& m) {
      return m.find(needle) != std::string::npos;
    });
  }
};

CombSpec demo_comb() {
  CombSpec c;
  c.n_peaks = 5;
  c.delta_hz = 1.0e6;
  c.gamma_fwhm_hz = 0.25e6;
  c.peak_d = 2.0;
  c.background_d0 = 0.3;
  c.shape = PeakShape::gaussian;
  return c;
}

}  // namespace

TEST_CASE("peak shape names round-trip") {
  for (auto s : {PeakShape::gaussian, PeakShape::lorentzian, PeakShape::square})
    CHECK(parse_peak_shape(peak_shape_name(s)) == s);
  CHECK_THROWS_AS(parse_peak_shape("triangular"), std::invalid_argument);
}

TEST_CASE("comb validation enforces finesse > 1 and depth ordering") {
  CombSpec c = demo_comb();
  CHECK_NOTHROW(c.validate());
  c.gamma_fwhm_hz = 1.5e6;  // wider than the spacing
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = demo_comb();
  c.peak_d = 0.1;  // below the background
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = demo_comb();
  c.n_peaks = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("comb_peak_centers is symmetric with the requested spacing") {
  CombSpec c = demo_comb();
  c.center_hz = 3.0e5;
  auto p = comb_peak_centers(c);
  REQUIRE(p.size() == 5);
  CHECK(p[2] == doctest::Approx(3.0e5));
  for (std::size_t k = 1; k < p.size(); ++k)
    CHECK(p[k] - p[k - 1] == doctest::Approx(1.0e6));
  CHECK(p.front() + p.back() == doctest::Approx(2 * 3.0e5));

  c.n_peaks = 4;  // even count: no peak on the symmetry axis
  p = comb_peak_centers(c);
  CHECK(p[1] == doctest::Approx(3.0e5 - 0.5e6));
  CHECK(p[2] == doctest::Approx(3.0e5 + 0.5e6));
}

TEST_CASE("comb_optical_depth hits peak_d on peaks and d0 between them") {
  const CombSpec c = demo_comb();
  // grid points at multiples of 125 kHz: every center and midpoint is on-grid
  const auto grid = make_grid(0.0, 8.0e6, 64);
  const auto abs = comb_optical_depth(c, grid);
  REQUIRE(abs.d_of_nu.size() == 64);

  auto at = [&](double nu) {
    const auto k = static_cast<std::size_t>(
        std::lround((nu - grid.nu(0)) / grid.dnu()));
    return abs.d_of_nu.at(k);
  };
  for (const double nu : comb_peak_centers(c))
    CHECK(at(nu) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(at(-1.5e6) == doctest::Approx(0.3).epsilon(1e-3));  // gap floor
  CHECK(at(0.5e6) > 0.3);
  CHECK(at(0.5e6) < 0.31);
}

TEST_CASE("square comb has flat tops of width gamma") {
  CombSpec c = demo_comb();
  c.shape = PeakShape::square;
  c.n_peaks = 1;
  const auto grid = make_grid(0.0, 2.0e6, 128);  // dnu = 15.625 kHz
  const auto abs = comb_optical_depth(c, grid);
  for (std::size_t k = 0; k < grid.n_points; ++k) {
    const double nu = grid.nu(k);
    const double want = std::abs(nu) <= 0.5 * c.gamma_fwhm_hz ? 2.0 : 0.3;
    CHECK(abs.d_of_nu[k] == want);
  }
}

TEST_CASE("comb wider than the grid raises a truncation warning") {
  WarningCatcher w;
  CombSpec c = demo_comb();
  c.n_peaks = 41;
  (void)comb_optical_depth(c, make_grid(0.0, 8.0e6, 64));
  CHECK(w.saw("truncated"));
}

TEST_CASE("inhomogeneous line: center, half maximum, far wing") {
  InhomogeneousLine line{0.0, 10.0e9, 9.1};
  const auto grid = make_grid(0.0, 102.4e9, 1024);  // dnu = 1e8, on-grid points
  const auto abs = inhomogeneous_depth(line, grid);
  auto at = [&](double nu) {
    const auto k = static_cast<std::size_t>(
        std::lround((nu - grid.nu(0)) / grid.dnu()));
    return abs.d_of_nu.at(k);
  };
  CHECK(at(0.0) == doctest::Approx(9.1));
  CHECK(at(5.0e9) == doctest::Approx(4.55));
  CHECK(at(-5.0e9) == doctest::Approx(4.55));
  // 45 GHz off a 10 GHz-wide line: 25/(45^2+25) of the center depth
  CHECK(at(45.0e9) == doctest::Approx(9.1 * 0.012195121951219513).epsilon(1e-12));

  line.fwhm_hz = -1.0;
  CHECK_THROWS_AS(inhomogeneous_depth(line, grid), std::invalid_argument);
}

TEST_CASE("hilbert_transform is linear") {
  const std::size_t n = 256;
  std::vector<double> f(n), g(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = (static_cast<double>(i) - 128.0) / 20.0;
    f[i] = 1.0 / (1.0 + x * x);
    g[i] = std::exp(-0.5 * x * x) * (1.0 + 0.3 * x);
  }
  std::vector<double> combo(n);
  for (std::size_t i = 0; i < n; ++i) combo[i] = 2.0 * f[i] - 0.5 * g[i];

  const auto hf = hilbert_transform(f);
  const auto hg = hilbert_transform(g);
  const auto hc = hilbert_transform(combo);
  for (std::size_t i = 0; i < n; ++i)
    CHECK(hc[i] == doctest::Approx(2.0 * hf[i] - 0.5 * hg[i]).epsilon(1e-10));
}

TEST_CASE("hilbert_transform rejects weak padding and bad taper") {
  std::vector<double> f(64, 1.0);
  CHECK_THROWS_AS(hilbert_transform(f, 2), std::invalid_argument);
  CHECK_THROWS_AS(hilbert_transform(f, 16, 0.7), std::invalid_argument);
  CHECK(hilbert_transform({}).empty());
}

TEST_CASE("numerical dispersion matches the exact Lorentzian pair") {
  // A narrow line well inside a wide grid; compare the FFT route against the
  // closed-form Hilbert pair over the central half of the grid.
  const InhomogeneousLine line{0.0, 1.0e6, 4.0};
  const auto grid = make_grid(0.0, 40.0e6, 4096);
  const double nu0 = 494.7e12, n_bg = 1.8, L = 2.0e-3;

  const auto abs = inhomogeneous_depth(line, grid);
  KramersKronigOptions opt;
  opt.min_feature_hz = line.fwhm_hz;
  const auto num = kramers_kronig_index(abs, nu0, n_bg, L, opt);
  const auto exact = lorentzian_line_index(line, grid, nu0, n_bg, L);

  REQUIRE(num.delta_n.size() == exact.delta_n.size());
  double ref = 0.0;
  for (const double v : exact.delta_n) ref = std::max(ref, std::abs(v));
  REQUIRE(ref > 0.0);
  double worst = 0.0;
  for (std::size_t i = grid.n_points / 4; i < 3 * grid.n_points / 4; ++i)
    worst = std::max(worst, std::abs(num.delta_n[i] - exact.delta_n[i]));
  CHECK(worst / ref < 1e-3);
  CHECK(num.n_bg == n_bg);
  CHECK(num.nu0_hz == nu0);
}

TEST_CASE("kramers_kronig_index enforces feature resolution") {
  const InhomogeneousLine line{0.0, 1.0e6, 4.0};
  const auto grid = make_grid(0.0, 40.0e6, 64);  // dnu = 625 kHz, far too coarse
  const auto abs = inhomogeneous_depth(line, grid);
  KramersKronigOptions opt;
  opt.min_feature_hz = line.fwhm_hz;
  CHECK_THROWS_AS(kramers_kronig_index(abs, 494.7e12, 1.8, 2e-3, opt),
                  resolution_error);
  CHECK_THROWS_AS(kramers_kronig_index(abs, 494.7e12, 1.8, 0.0),
                  std::invalid_argument);
}

TEST_CASE("kramers_kronig_index warns when absorption reaches the edges") {
  WarningCatcher w;
  AbsorptionSpectrum abs;
  abs.grid = make_grid(0.0, 10.0e6, 128);
  abs.d_of_nu.assign(128, 1.0);  // flat: no decay toward the edges
  (void)kramers_kronig_index(abs, 494.7e12, 1.8, 2e-3);
  CHECK(w.saw("edge"));
}

TEST_CASE("group_index reproduces the analytic value for a linear ramp") {
  ComplexIndex idx;
  idx.grid = make_grid(0.0, 10.0e6, 32);
  idx.n_bg = 1.8;
  idx.nu0_hz = 494.7e12;
  const double q = 3.0e-12;  // delta_n per Hz
  idx.delta_n.resize(32);
  for (std::size_t i = 0; i < 32; ++i) idx.delta_n[i] = q * idx.grid.nu(i);

  const auto ng = group_index(idx);
  REQUIRE(ng.size() == 32);
  for (std::size_t i = 0; i < 32; ++i) {
    const double nu = idx.grid.nu(i);
    const double want = 1.8 + q * nu + (494.7e12 + nu) * q;
    CHECK(ng[i] == doctest::Approx(want).epsilon(1e-12));
  }

  idx.delta_n.resize(2);
  idx.grid.n_points = 2;
  CHECK_THROWS_AS(group_index(idx), std::invalid_argument);
}
