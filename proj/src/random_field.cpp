#include "fns/random_field.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fns {

namespace detail {

std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double uniform_at(std::uint64_t seed, std::uint64_t counter) {
  // 53 mantissa bits, shifted into (0,1) to keep log() finite
  return (static_cast<double>(splitmix64_at(seed, counter) >> 11) + 0.5) *
         0x1.0p-53;
}

}  // namespace detail

ComplexField seeded_random_field(const Grid& g, const RandomFieldSpec& spec) {
  if (spec.band < 0 || spec.band > g.points / 2 - 1)
    throw std::invalid_argument(
        "seeded_random_field: band must be in [0, P/2 - 1]");
  ComplexField out(g, Representation::spectral);
  const int P = g.points;
  const double dk = g.freq_step();
  std::vector<int> idx(g.dim, 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    bool inside = true;
    bool zero_mode = true;
    double k2 = 0.0;
    for (int a = 0; a < g.dim; ++a) {
      int ka = idx[a] < P / 2 ? idx[a] : idx[a] - P;
      if (std::abs(ka) > spec.band) inside = false;
      if (ka != 0) zero_mode = false;
      k2 += double(ka) * double(ka);
    }
    if (inside && !(spec.mean_free && zero_mode)) {
      // complex gaussian via Box-Muller on two counter values per site
      double u1 = detail::uniform_at(spec.seed, 2 * i);
      double u2 = detail::uniform_at(spec.seed, 2 * i + 1);
      double r = std::sqrt(-2.0 * std::log(u1));
      std::complex<double> gz(r * std::cos(2.0 * kPi * u2),
                              r * std::sin(2.0 * kPi * u2));
      double w = 1.0;
      if (spec.profile == SpectralProfile::gaussian) {
        double kr2 = k2 * dk * dk;
        w = std::exp(-0.5 * kr2 / (spec.profile_width * spec.profile_width));
      }
      out[i] = spec.amplitude * w * gz;
    }
    for (int a = g.dim - 1; a >= 0; --a) {
      if (++idx[a] < P) break;
      idx[a] = 0;
    }
  }
  return to_physical(out);
}

}  // namespace fns
