#pragma once

#include <cstddef>
#include <vector>

namespace afc {

inline constexpr double kC0 = 299792458.0;  // vacuum speed of light, m/s

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Uniform frequency axis. Point k sits at center_hz - span_hz/2 + k*dnu.
struct FrequencyGrid {
  double center_hz = 0.0;
  double span_hz = 0.0;
  std::size_t n_points = 0;

  double dnu() const { return span_hz / static_cast<double>(n_points); }
  double nu(std::size_t k) const {
    return center_hz - 0.5 * span_hz + static_cast<double>(k) * dnu();
  }
  std::vector<double> axis() const {
    std::vector<double> v(n_points);
    for (std::size_t k = 0; k < n_points; ++k) v[k] = nu(k);
    return v;
  }
  bool operator==(const FrequencyGrid&) const = default;
};

FrequencyGrid make_grid(double center_hz, double span_hz, std::size_t n_points);

// Uniform time axis, first sample at t0_s.
struct TimeGrid {
  double dt_s = 0.0;
  std::size_t n_samples = 0;
  double t0_s = 0.0;

  double t(std::size_t k) const { return t0_s + static_cast<double>(k) * dt_s; }
  double duration() const { return dt_s * static_cast<double>(n_samples); }
  bool operator==(const TimeGrid&) const = default;
};

TimeGrid make_time_grid(double dt_s, std::size_t n_samples, double t0_s = 0.0);

}  // namespace afc
