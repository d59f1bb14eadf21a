#include "fns/grid.hpp"

#include <cmath>
#include <string>

namespace fns {

double Grid::max_radius() const {
  double r2 = 0.0;
  double knyq = freq_step() * (points / 2);
  for (int i = 0; i < dim; ++i) r2 += knyq * knyq;
  return std::sqrt(r2);
}

Grid make_grid(int dim, int points_per_axis, double box_length,
               std::size_t max_total_points) {
  if (dim < 1 || dim > 7)
    throw std::invalid_argument("make_grid: dim must be in 1..7, got " +
                                std::to_string(dim));
  if (points_per_axis < 4 || points_per_axis % 2 != 0)
    throw std::invalid_argument(
        "make_grid: points_per_axis must be even and >= 4, got " +
        std::to_string(points_per_axis));
  if (!(box_length > 0.0))
    throw std::invalid_argument("make_grid: box_length must be positive");
  Grid g{dim, points_per_axis, box_length};
  if (g.size() > max_total_points)
    throw std::invalid_argument(
        "make_grid: total point count " + std::to_string(g.size()) +
        " exceeds memory budget of " + std::to_string(max_total_points) +
        " points");
  return g;
}

}  // namespace fns
