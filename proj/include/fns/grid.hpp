#pragma once

#include <cstddef>
#include <stdexcept>

namespace fns {

inline constexpr double kPi = 3.14159265358979323846;

// Discretized periodic box [0,L)^dim with P points per axis.
// Frequency lattice per axis: (2*pi/L) * {-P/2, ..., P/2-1}, stored in
// DFT order (0..P/2-1, -P/2..-1).
struct Grid {
  int dim = 0;
  int points = 0;
  double length = 0.0;

  std::size_t size() const {
    std::size_t s = 1;
    for (int i = 0; i < dim; ++i) s *= static_cast<std::size_t>(points);
    return s;
  }
  double cell_volume() const {
    double v = 1.0;
    for (int i = 0; i < dim; ++i) v *= length / points;
    return v;
  }
  double box_volume() const {
    double v = 1.0;
    for (int i = 0; i < dim; ++i) v *= length;
    return v;
  }
  double freq_step() const { return 2.0 * kPi / length; }
  // Storage index along one axis -> signed lattice index.
  int freq_index(int i) const { return i < points / 2 ? i : i - points; }
  // Largest |k| on the lattice (the all-Nyquist corner).
  double max_radius() const;
  // Largest per-axis |k| (Nyquist row).
  double nyquist() const { return freq_step() * (points / 2); }

  friend bool operator==(const Grid&, const Grid&) = default;
};

inline constexpr std::size_t kDefaultMaxPoints = std::size_t(1) << 26;

Grid make_grid(int dim, int points_per_axis, double box_length,
               std::size_t max_total_points = kDefaultMaxPoints);

}  // namespace fns
