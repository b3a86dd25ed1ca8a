#include "afc/grid.hpp"

#include <stdexcept>
#include <string>

namespace afc {

FrequencyGrid make_grid(double center_hz, double span_hz, std::size_t n_points) {
  if (!(span_hz > 0.0))
    throw std::invalid_argument("make_grid: span_hz must be positive");
  if (n_points < 16 || !is_pow2(n_points))
    throw std::invalid_argument(
        "make_grid: n_points must be a power of two >= 16 (got " +
        std::to_string(n_points) + ")");
  return FrequencyGrid{center_hz, span_hz, n_points};
}

TimeGrid make_time_grid(double dt_s, std::size_t n_samples, double t0_s) {
  if (!(dt_s > 0.0))
    throw std::invalid_argument("make_time_grid: dt_s must be positive");
  if (n_samples < 16 || !is_pow2(n_samples))
    throw std::invalid_argument(
        "make_time_grid: n_samples must be a power of two >= 16 (got " +
        std::to_string(n_samples) + ")");
  return TimeGrid{dt_s, n_samples, t0_s};
}

}  // namespace afc
