#pragma once

#include <cstdint>

#include "fns/field.hpp"

namespace fns {

enum class SpectralProfile { flat, gaussian };

// Deterministic band-limited random data. Coefficients are filled in
// row-major lattice order from a counter-based generator (splitmix64 with
// the standard constants), so identical specs give identical fields with no
// sequential PRNG state.
struct RandomFieldSpec {
  std::uint64_t seed = 0;
  int band = 1;  // max per-axis frequency index carrying energy
  SpectralProfile profile = SpectralProfile::flat;
  double profile_width = 1.0;  // |k|-space width for the gaussian profile
  double amplitude = 1.0;
  bool mean_free = false;
};

ComplexField seeded_random_field(const Grid& g, const RandomFieldSpec& spec);

namespace detail {
// Exposed for tests: the raw counter-based stream.
std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t counter);
double uniform_at(std::uint64_t seed, std::uint64_t counter);  // in (0,1)
}  // namespace detail

}  // namespace fns
