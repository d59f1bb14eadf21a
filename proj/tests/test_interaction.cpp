#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "fns/functionals.hpp"
#include "fns/random_field.hpp"
#include "oracles.hpp"

using namespace fns;

namespace {

ComplexField band_random(const Grid& g, std::uint64_t seed, int band,
                         bool mean_free = false) {
  RandomFieldSpec spec;
  spec.seed = seed;
  spec.band = band;
  spec.mean_free = mean_free;
  return seeded_random_field(g, spec);
}

}  // namespace

TEST_CASE("riesz bilinear requires n >= 5 and reduces to L4 at n = 5") {
  Grid g4 = make_grid(4, 4, 2 * kPi);
  ComplexField u4 = band_random(g4, 1, 1);
  CHECK_THROWS_AS(riesz_bilinear(u4), std::invalid_argument);

  Grid g5 = make_grid(5, 4, 2 * kPi);
  ComplexField u5 = band_random(g5, 2, 1);
  auto r = riesz_bilinear(u5);
  double l4 = lp_norm(u5, 4.0);
  CHECK(r.value == doctest::Approx(l4 * l4 * l4 * l4).epsilon(1e-12));

  ComplexField z(g5, Representation::physical);
  CHECK(riesz_bilinear(z).value == 0.0);
}

TEST_CASE("riesz bilinear matches the double-sum oracle at 4^6") {
  Grid g = make_grid(6, 4, 2 * kPi);
  ComplexField u = band_random(g, 5, 1);
  auto spectral = riesz_bilinear(u);
  double direct = oracles::riesz_double_sum(u, g.dim - 5.0);
  CHECK(spectral.value ==
        doctest::Approx(direct).epsilon(1e-10));
}

TEST_CASE("interaction action matches the double-sum oracle at 4^5") {
  Grid g = make_grid(5, 4, 2 * kPi);
  ComplexField u = band_random(g, 3, 1);
  auto conv = interaction_action_bound(u);

  // J computed with the same spectral gradients as the library
  std::vector<std::vector<double>> J(g.dim, std::vector<double>(g.size()));
  for (int j = 0; j < g.dim; ++j) {
    ComplexField dj = derivative(u, j);
    for (std::size_t i = 0; i < u.size(); ++i)
      J[j][i] = std::imag(std::conj(u[i]) * dj[i]);
  }
  double direct = oracles::interaction_double_sum(u, J);
  CHECK(conv.action_bound == doctest::Approx(direct).epsilon(1e-9));
}

TEST_CASE("interaction action vanishes on real data; zero field gives zero") {
  Grid g = make_grid(5, 4, 2 * kPi);
  ComplexField u = band_random(g, 8, 1);
  ComplexField re(g, Representation::physical);
  for (std::size_t i = 0; i < u.size(); ++i) re[i] = u[i].real();
  auto r = interaction_action_bound(re);
  CHECK(std::abs(r.action_bound) <= 1e-12 * std::max(1.0, r.rhs_product));
  CHECK(r.rhs_product > 0.0);

  ComplexField z(g, Representation::physical);
  auto rz = interaction_action_bound(z);
  CHECK(rz.action_bound == 0.0);
  CHECK(rz.rhs_product == 0.0);
}

TEST_CASE("smoothed-L4 inequality is an exact identity at n = 5") {
  Grid g = make_grid(5, 4, 2 * kPi);
  for (int seed = 0; seed < 10; ++seed) {
    ComplexField u = band_random(g, 50 + seed, 1, true);
    ComplexField w = apply_multiplier(u, FractionalDerivative{0.0});
    double l4 = lp_norm(w, 4.0);
    double lhs = l4 * l4;
    ComplexField sq(g, Representation::physical);
    for (std::size_t i = 0; i < u.size(); ++i) sq[i] = std::norm(u[i]);
    double rhs = lp_norm(sq, 2.0);
    CHECK(std::abs(lhs - rhs) / rhs <= 1e-12);
  }
}

// The torus analogue of the smoothed-L4 inequality with mean-killed Riesz
// operators carries a constant strictly above 1 (the continuum proof is a
// square-function argument with constants; a plain gaussian already gives
// ratio ~ 1.05). The library reports the measured constant rather than
// asserting 1; here we pin the measured range so regressions are caught.
TEST_CASE("smoothed-L4 ratio at n = 6 sits in the measured constant range") {
  Grid g = make_grid(6, 4, 2 * kPi);
  double worst = 0.0;
  for (int seed = 0; seed < 5; ++seed) {
    ComplexField u = band_random(g, 80 + seed, 1, true);
    ComplexField w = apply_multiplier(u, RieszPotential{0.25});
    double l4 = lp_norm(w, 4.0);
    double lhs = l4 * l4;
    ComplexField sq(g, Representation::physical);
    for (std::size_t i = 0; i < u.size(); ++i) sq[i] = std::norm(u[i]);
    ComplexField rr = apply_multiplier(sq, RieszPotential{0.5});
    double rhs = lp_norm(rr, 2.0);
    worst = std::max(worst, lhs / rhs);
  }
  CHECK(worst > 1.0);   // the constant-1 form genuinely fails here
  CHECK(worst < 3.0);   // but only by a bounded constant
}
