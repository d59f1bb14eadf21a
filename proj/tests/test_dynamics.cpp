#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "fns/dynamics.hpp"
#include "fns/functionals.hpp"
#include "fns/random_field.hpp"
#include "oracles.hpp"

using namespace fns;

namespace {

ComplexField plane_wave(const Grid& g, double A, const std::vector<int>& mode) {
  ComplexField f(g, Representation::spectral);
  std::size_t flat = 0;
  for (int a = 0; a < g.dim; ++a) {
    int ia = mode[a] >= 0 ? mode[a] : mode[a] + g.points;
    flat = flat * g.points + ia;
  }
  f[flat] = A;
  return to_physical(f);
}

ComplexField gaussian(const Grid& g, double A, double w) {
  ComplexField f(g, Representation::physical);
  const double h = g.length / g.points;
  std::vector<int> idx(g.dim, 0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    double r2 = 0.0;
    for (int a = 0; a < g.dim; ++a) {
      double d = idx[a] * h - 0.5 * g.length;
      r2 += d * d;
    }
    f[i] = A * std::exp(-r2 / (2 * w * w));
    for (int a = g.dim - 1; a >= 0; --a) {
      if (++idx[a] < g.points) break;
      idx[a] = 0;
    }
  }
  return f;
}

}  // namespace

TEST_CASE("rhs on plane waves and zero data") {
  Grid g = make_grid(2, 16, 2 * kPi);
  double A = 0.7;
  ComplexField u = plane_wave(g, A, {2, 1});
  ComplexField r = rhs(u);
  // i(|k|^4 + A^2) u with |k|^2 = 5
  std::complex<double> factor(0.0, 25.0 + A * A);
  for (std::size_t i = 0; i < u.size(); ++i)
    CHECK(std::abs(r[i] - factor * u[i]) < 1e-11);

  ComplexField z(g, Representation::physical);
  ComplexField rz = rhs(z);
  CHECK(rz.max_abs() == 0.0);
}

TEST_CASE("rhs versus a refined finite-difference biharmonic oracle") {
  // 1-D gaussian, box long enough that the periodic wrap is negligible
  Grid g = make_grid(1, 64, 4 * kPi);
  double A = 1.0, w = 0.8;
  ComplexField u = gaussian(g, A, w);
  ComplexField r = rhs(u);

  const int fine = 8192;
  const long double hf = static_cast<long double>(g.length) / fine;
  std::vector<long double> samples(fine);
  for (int i = 0; i < fine; ++i) {
    long double d = i * hf - 0.5L * static_cast<long double>(g.length);
    samples[i] = A * std::exp(-d * d / (2.0L * w * w));
  }
  auto lap1 = oracles::fd_laplacian_1d(samples, hf);
  auto lap2 = oracles::fd_laplacian_1d(lap1, hf);

  const int ratio = fine / g.points;
  double num = 0.0, den = 0.0;
  for (int i = 0; i < g.points; ++i) {
    // stay away from the box seam: the sampled gaussian is periodic only up
    // to a ~1e-13 derivative jump there, which the fourth-derivative
    // stencil amplifies by 1/h^3
    double x = i * g.length / g.points;
    if (std::abs(x - 0.5 * g.length) > 0.25 * g.length) continue;
    double uval = static_cast<double>(samples[static_cast<std::size_t>(i) * ratio]);
    double expect = static_cast<double>(lap2[static_cast<std::size_t>(i) * ratio]) +
                    uval * uval * uval;
    // rhs = i(Lap^2 u + |u|^2 u): compare the imaginary part
    num += std::pow(r[i].imag() - expect, 2);
    den += expect * expect;
  }
  CHECK(std::sqrt(num / den) <= 1e-6);
}

TEST_CASE("linear propagator: phases, identity, unitary round trip") {
  Grid g = make_grid(1, 8, 2 * kPi);
  ComplexField tone = plane_wave(g, 1.0, {1});

  ComplexField id = propagate_linear(tone, 0.0);
  for (std::size_t i = 0; i < id.size(); ++i)
    CHECK(std::abs(id[i] - tone[i]) < 1e-15);

  // |k|^4 = 1: t = pi flips the sign
  ComplexField flip = propagate_linear(tone, kPi);
  for (std::size_t i = 0; i < flip.size(); ++i)
    CHECK(std::abs(flip[i] + tone[i]) < 1e-14);

  RandomFieldSpec spec;
  spec.seed = 5;
  spec.band = 3;
  ComplexField u = seeded_random_field(g, spec);
  ComplexField round = propagate_linear(propagate_linear(u, 0.37), -0.37);
  double num = 0, den = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    num += std::norm(round[i] - u[i]);
    den += std::norm(u[i]);
  }
  CHECK(std::sqrt(num / den) <= 1e-13);

  double m0 = mass(u);
  double m1 = mass(propagate_linear(u, 2.1));
  CHECK(std::abs(m1 - m0) / m0 <= 1e-13);
}

TEST_CASE("strang step is exact on plane waves") {
  Grid g = make_grid(2, 16, 2 * kPi);
  double A = 1.3, dt = 0.2;
  ComplexField u0 = plane_wave(g, A, {1, 2});
  SimState s;
  s.field = u0;
  s.dt = dt;
  s.dealias_rule = DealiasRule::none;
  s = step_strang(std::move(s));
  // closed form: A e^{ikx} e^{i(|k|^4 + A^2) t}, |k|^2 = 5
  std::complex<double> phase = std::polar(1.0, (25.0 + A * A) * dt);
  for (std::size_t i = 0; i < u0.size(); ++i)
    CHECK(std::abs(s.field[i] - phase * u0[i]) <= 1e-12 * A);
}

TEST_CASE("zero field stays zero") {
  Grid g = make_grid(1, 16, 2 * kPi);
  ComplexField z(g, Representation::physical);
  Trajectory t = evolve(z, 0.1, 0.01, 2);
  CHECK(t.snapshots.back().field.max_abs() == 0.0);
}

TEST_CASE("plane wave matches the closed form over many steps") {
  Grid g = make_grid(1, 32, 2 * kPi);
  double A = 1.0;
  ComplexField u0 = plane_wave(g, A, {2});
  EvolveOptions opts;
  opts.dealias = DealiasRule::none;
  Trajectory t = evolve(u0, 1.0, 0.01, 25, opts);
  std::complex<double> phase = std::polar(1.0, (16.0 + A * A) * 1.0);
  const ComplexField& uT = t.back().field;
  double worst = 0.0;
  for (std::size_t i = 0; i < u0.size(); ++i)
    worst = std::max(worst, std::abs(uT[i] - phase * u0[i]));
  CHECK(worst <= 1e-11);
}

TEST_CASE("mass conservation over 1000 steps, dealias off") {
  Grid g = make_grid(1, 64, 2 * kPi);
  RandomFieldSpec spec;
  spec.seed = 17;
  spec.band = 31;
  spec.amplitude = 0.5;
  ComplexField u0 = seeded_random_field(g, spec);
  EvolveOptions opts;
  opts.dealias = DealiasRule::none;
  Trajectory t = evolve(u0, 1.0, 1e-3, 100, opts);
  double m0 = t.diagnostics.front().mass;
  for (const auto& d : t.diagnostics)
    CHECK(std::abs(d.mass - m0) / m0 <= 1e-11);
}

TEST_CASE("with the half rule the mass drift equals the recorded truncation") {
  Grid g = make_grid(1, 64, 2 * kPi);
  RandomFieldSpec spec;
  spec.seed = 23;
  spec.band = 31;  // full spectrum: truncation genuinely active
  spec.amplitude = 1.0;
  ComplexField u0 = seeded_random_field(g, spec);
  EvolveOptions opts;
  opts.dealias = DealiasRule::half_rule;
  Trajectory t = evolve(u0, 0.2, 1e-3, 50, opts);
  double m0 = t.diagnostics.front().mass;
  double mT = t.diagnostics.back().mass;
  CHECK(t.truncated_mass > 1e-8);  // the rule actually removed something
  CHECK(std::abs(mT + t.truncated_mass - m0) / m0 <= 1e-11);
}

TEST_CASE("energy drift is second order in dt") {
  Grid g = make_grid(1, 64, 4 * kPi);
  ComplexField u0 = gaussian(g, 1.0, 1.1);
  auto drift = [&](double dt) {
    EvolveOptions opts;
    opts.dealias = DealiasRule::none;
    Trajectory t = evolve(u0, 0.5, dt, std::lround(0.5 / dt));
    double e0 = t.diagnostics.front().energy;
    double worst = 0.0;
    for (const auto& d : t.diagnostics)
      worst = std::max(worst, std::abs(d.energy - e0) / e0);
    return worst;
  };
  double d1 = drift(1e-2), d2 = drift(5e-3);
  CHECK(d1 / d2 >= 3.2);
  CHECK(d1 / d2 <= 4.8);
}

TEST_CASE("gaussian self-convergence at half step size") {
  Grid g = make_grid(1, 64, 4 * kPi);
  // wide bump and small dt so every populated mode has |k|^4 dt << 1 and
  // the error sits cleanly in the dt^2 regime
  ComplexField u0 = gaussian(g, 1.0, 1.5);
  EvolveOptions opts;
  opts.dealias = DealiasRule::none;
  Trajectory a = evolve(u0, 0.25, 2e-3, 125, opts);
  Trajectory b = evolve(u0, 0.25, 1e-3, 250, opts);
  Trajectory c = evolve(u0, 0.25, 5e-4, 500, opts);
  auto diff = [](const ComplexField& x, const ComplexField& y) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += std::norm(x[i] - y[i]);
    return std::sqrt(acc);
  };
  // consecutive-difference order estimate: ||u_dt - u_dt/2|| / ||u_dt/2 -
  // u_dt/4|| -> 4 for a second-order scheme
  double e1 = diff(a.back().field, b.back().field);
  double e2 = diff(b.back().field, c.back().field);
  CHECK(e1 / e2 > 3.2);
  CHECK(e1 / e2 < 4.8);
}

TEST_CASE("evolve validates the step count") {
  Grid g = make_grid(1, 16, 2 * kPi);
  ComplexField u0 = plane_wave(g, 0.1, {1});
  CHECK_THROWS_AS(evolve(u0, 1.0, 0.3, 1), std::invalid_argument);
  CHECK_THROWS_AS(evolve(u0, -1.0, 0.1, 1), std::invalid_argument);
}

TEST_CASE("snapshot count and times") {
  Grid g = make_grid(1, 16, 2 * kPi);
  ComplexField u0 = plane_wave(g, 0.1, {1});
  Trajectory t = evolve(u0, 1.0, 0.1, 3);
  // steps = 10, stride 3 -> snapshots at steps 0,3,6,9,10
  REQUIRE(t.snapshots.size() == 5);
  CHECK(t.snapshots.front().time == 0.0);
  CHECK(t.snapshots.back().time == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t i = 1; i < t.snapshots.size(); ++i)
    CHECK(t.snapshots[i].time > t.snapshots[i - 1].time);
  for (const auto& d : t.diagnostics) CHECK(d.all_finite());
}

TEST_CASE("blow-up detection surfaces as BlowupError with partial trajectory") {
  Grid g = make_grid(1, 16, 2 * kPi);
  ComplexField u0(g, Representation::physical);
  for (auto& v : u0.values()) v = 1e200;  // |u|^2 overflows in the kick
  EvolveOptions opts;
  opts.dealias = DealiasRule::none;
  try {
    evolve(u0, 0.1, 0.01, 1, opts);
    FAIL("expected BlowupError");
  } catch (const BlowupError& e) {
    REQUIRE(e.partial_trajectory != nullptr);
    CHECK(e.partial_trajectory->diagnostics.size() >= 1);
  }

  ComplexField huge(g, Representation::physical);
  for (auto& v : huge.values()) v = 1e200;
  CHECK_THROWS_AS(rhs(huge), std::runtime_error);
}
