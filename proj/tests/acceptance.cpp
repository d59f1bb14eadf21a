// Acceptance suite: one criterion per invocation (argv[1] in 1..8), every
// threshold pinned here. Prints one pass/fail line per criterion and exits
// nonzero on failure.

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "fns/checkpoint.hpp"
#include "fns/dynamics.hpp"
#include "fns/experiments.hpp"
#include "fns/fft.hpp"
#include "oracles.hpp"

using namespace fns;

namespace {

int g_failures = 0;

void line(int crit, const char* what, bool pass, double measured,
          const char* rel, double threshold) {
  std::printf("%s  criterion %d: %-38s  measured %.3e %s %.3e\n",
              pass ? "PASS" : "FAIL", crit, what, measured, rel, threshold);
  if (!pass) ++g_failures;
}

ExperimentConfig gaussian_config(ExperimentKind kind, int dim, int points,
                                 double length, double A, double w, double T,
                                 double dt) {
  ExperimentConfig c;
  c.kind = kind;
  c.dim = dim;
  c.points = points;
  c.length = length;
  c.data.kind = DataKind::gaussian;
  c.data.amplitude = A;
  c.data.width = w;
  c.T = T;
  c.dt = dt;
  return c;
}

// 1. Conservation: gaussian data, n=2, P=64, T=1, dt=1e-2; relative mass
//    drift <= 1e-11, relative energy drift <= 1e-5, dt-halving drift ratio
//    in [3.2, 4.8].
void criterion1() {
  ExperimentConfig c =
      gaussian_config(ExperimentKind::conserve, 2, 64, 8 * kPi, 0.4, 2.0,
                      1.0, 1e-2);
  c.snapshot_stride = 5;
  c.N_list = {4};
  auto r = run_conservation_study(c);
  line(1, "relative mass drift", r.scalars.at("mass_drift_rel") <= 1e-11,
       r.scalars.at("mass_drift_rel"), "<=", 1e-11);
  line(1, "relative energy drift", r.scalars.at("energy_drift_rel") <= 1e-5,
       r.scalars.at("energy_drift_rel"), "<=", 1e-5);
  double ratio = r.scalars.at("energy_drift_dt_ratio");
  line(1, "dt-halving drift ratio in [3.2,4.8]",
       ratio >= 3.2 && ratio <= 4.8, ratio, "in", 4.0);
}

// 2. Morawetz identity residual: 20 seeded band-limited fields, n=2 (P=32)
//    <= 1e-8 and n=5 (P=8) <= 1e-7, at t=0 and along 10 evolved snapshots.
void criterion2() {
  {
    ExperimentConfig c;
    c.kind = ExperimentKind::identity;
    c.dim = 2;
    c.points = 32;
    c.length = 2 * kPi;
    c.data.kind = DataKind::random;
    c.data.amplitude = 0.05;
    c.data.random.band = 5;
    c.T = 0.02;
    c.dt = 2e-3;
    c.seeds = 20;
    c.dealias = DealiasRule::none;
    auto r = run_identity_check(c, 2);
    line(2, "identity residual n=2 P=32 (20 seeds)",
         r.scalars.at("max_residual") <= 1e-8, r.scalars.at("max_residual"),
         "<=", 1e-8);
  }
  {
    ExperimentConfig c;
    c.kind = ExperimentKind::identity;
    c.dim = 5;
    c.points = 8;
    c.length = 2 * kPi;
    c.data.kind = DataKind::random;
    c.data.amplitude = 0.05;
    c.data.random.band = 1;
    c.T = 0.02;
    c.dt = 2e-3;
    c.seeds = 20;
    c.dealias = DealiasRule::none;
    auto r = run_identity_check(c, 2);
    line(2, "identity residual n=5 P=8 (20 seeds)",
         r.scalars.at("max_residual") <= 1e-7, r.scalars.at("max_residual"),
         "<=", 1e-7);
  }
}

// 3. Smoothed-L4 inequality with constant exactly 1: 100 seeds at n=6
//    (P=8), 50 seeds at n=7 (P=6); exact equality (1e-12) at n=5. The
//    n=6/n=7 parts measure LHS/RHS above 1 (the bound only holds with a
//    constant); they are asserted as stated and reported honestly.
void criterion3() {
  auto lemma_cfg = [](int dim, int points, int seeds) {
    ExperimentConfig c;
    c.kind = ExperimentKind::lemma1;
    c.dim = dim;
    c.points = points;
    c.length = 2 * kPi;
    c.data.kind = DataKind::random;
    c.data.amplitude = 1.0;
    c.data.random.band = points / 2 - 1;
    c.data.random.mean_free = true;
    c.seeds = seeds;
    return c;
  };
  {
    auto r = run_lemma1_check(lemma_cfg(5, 8, 50), 4);
    bool eq = true;
    for (const auto& v : r.verdicts)
      if (v.name == "equality_error") eq = v.pass;
    line(3, "n=5 exact equality (50 seeds)", eq,
         r.scalars.at("max_ratio") - 1.0, "<=", 1e-12);
  }
  {
    auto r = run_lemma1_check(lemma_cfg(6, 8, 100), 4);
    line(3, "n=6 P=8 LHS <= RHS (100 seeds)",
         r.scalars.at("violations") == 0.0, r.scalars.at("max_ratio"), "<=",
         1.0 + 1e-10);
    std::printf("      note: measured constant sup LHS/RHS = %.4f at n=6\n",
                r.scalars.at("max_ratio"));
  }
  {
    auto r = run_lemma1_check(lemma_cfg(7, 6, 50), 4);
    line(3, "n=7 P=6 LHS <= RHS (50 seeds)",
         r.scalars.at("violations") == 0.0, r.scalars.at("max_ratio"), "<=",
         1.0 + 1e-10);
    std::printf("      note: measured constant sup LHS/RHS = %.4f at n=7\n",
                r.scalars.at("max_ratio"));
  }
}

// 4. Almost-conservation decay: n=5, P=16, gaussian data, N in {2,4,8,16},
//    T=0.5; fitted log-log slope <= -0.8 or every increment below 1e-12.
void criterion4() {
  ExperimentConfig c =
      gaussian_config(ExperimentKind::acl, 5, 16, 2 * kPi, 1.0, 1.1, 0.5,
                      2.5e-3);
  c.snapshot_stride = 20;
  c.dealias = DealiasRule::none;
  c.s = 1.0;
  c.N_list = {2, 4, 8, 16};
  auto r = run_acl_sweep(c);
  bool floor_pass = r.scalars.at("max_increment") < 1e-12;
  double slope = r.scalars.at("fitted_slope");
  line(4, "ACL slope (or < 1e-12 floor)", floor_pass || slope <= -0.8, slope,
       "<=", -0.8);
}

// 5. Interaction-estimate scale covariance at n=5, P=16: the ratio
//    ||u||_M^4 / sup(||u||_{Hdot1/2}^2 ||u||_{L2}^2) moves <= 5% under
//    lambda=2 rescaling, and the static change-of-variables exponents hold
//    to 1e-10.
void criterion5() {
  ExperimentConfig c;
  c.kind = ExperimentKind::morawetz;
  c.dim = 5;
  c.points = 16;
  c.length = 2 * kPi;
  c.data.kind = DataKind::random;
  c.data.amplitude = 0.3;
  c.data.random.band = 2;
  c.data.random.seed = 11;
  c.T = 0.1;
  c.dt = 2.5e-3;
  c.snapshot_stride = 8;
  c.dealias = DealiasRule::none;
  c.lambdas = {2.0};
  auto r = run_morawetz_study(c);
  line(5, "ratio change under lambda=2",
       r.scalars.at("ratio_change_max") <= 0.05,
       r.scalars.at("ratio_change_max"), "<=", 0.05);
  line(5, "static scaling exponents (2n-9 family)",
       r.scalars.at("scaling_exponent_error") <= 1e-10,
       r.scalars.at("scaling_exponent_error"), "<=", 1e-10);
}

// 6. Oracle equivalences: the spectral riesz bilinear form and the
//    convolution-based interaction action match O(P^{2n}) double-sum
//    oracles to 1e-9 on 4^6/4^5 grids; the scanned constants certify the
//    norm-comparison symbol inequalities on every grid radius.
void criterion6() {
  {
    Grid g = make_grid(6, 4, 2 * kPi);
    RandomFieldSpec spec;
    spec.seed = 5;
    spec.band = 1;
    ComplexField u = seeded_random_field(g, spec);
    double spectral = riesz_bilinear(u).value;
    double direct = oracles::riesz_double_sum(u, 1.0);
    double err = std::abs(spectral - direct) / std::abs(direct);
    line(6, "riesz bilinear vs double sum (4^6)", err <= 1e-9, err, "<=", 1e-9);
  }
  {
    Grid g = make_grid(5, 4, 2 * kPi);
    RandomFieldSpec spec;
    spec.seed = 3;
    spec.band = 1;
    ComplexField u = seeded_random_field(g, spec);
    auto conv = interaction_action_bound(u);
    std::vector<std::vector<double>> J(g.dim, std::vector<double>(g.size()));
    for (int j = 0; j < g.dim; ++j) {
      ComplexField dj = derivative(u, j);
      for (std::size_t i = 0; i < u.size(); ++i)
        J[j][i] = std::imag(std::conj(u[i]) * dj[i]);
    }
    double direct = oracles::interaction_double_sum(u, J);
    double err = std::abs(conv.action_bound - direct) / std::abs(direct);
    line(6, "interaction action vs double sum (4^5)", err <= 1e-9, err, "<=",
         1e-9);
  }
  {
    bool ok = true;
    double worst = 0.0;
    for (double s : {0.6, 1.0, 1.4})
      for (double N : {4.0, 16.0}) {
        auto f42 = [&](double r) {
          double m = symbol_value(IOperator{N, s}, r);
          double b = 1.0 + r * r;
          return m * m * b * b / (std::pow(N, 2 * (2 - s)) * std::pow(b, s));
        };
        auto f43 = [&](double r) {
          double m = symbol_value(IOperator{N, s}, r);
          double r2 = r * r;
          return std::pow(1.0 + r2, s) / (m * m * (1.0 + r2 * r2));
        };
        double C42 = oracles::scan_max(f42, 1e4 * N, 200000);
        double C43 = oracles::scan_max(f43, 1e4 * N, 200000);
        for (int dim : {1, 2, 5}) {
          Grid g = make_grid(dim, dim >= 5 ? 8 : 64, 2 * kPi);
          auto tables = fns::detail::spectral_tables(g);
          for (double k2 : tables->k2) {
            double r = std::sqrt(k2);
            worst = std::max({worst, f42(r) / C42, f43(r) / C43});
            if (f42(r) > C42 * (1 + 1e-12) || f43(r) > C43 * (1 + 1e-12))
              ok = false;
          }
        }
      }
    line(6, "scanned constants certify symbol bounds", ok, worst, "<=",
         1.0 + 1e-12);
  }
}

// 7. Exact solutions: plane-wave evolution matches the closed form to
//    1e-11 over 10^3 steps; the linear propagator round-trips to 1e-13.
void criterion7() {
  Grid g = make_grid(1, 32, 2 * kPi);
  double A = 1.0;
  ComplexField u0(g, Representation::spectral);
  u0[2] = A;  // k = 2
  u0 = to_physical(u0);
  EvolveOptions opts;
  opts.dealias = DealiasRule::none;
  Trajectory t = evolve(u0, 1.0, 1e-3, 1000, opts);
  std::complex<double> phase = std::polar(1.0, (16.0 + A * A) * 1.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < u0.size(); ++i)
    worst = std::max(worst,
                     std::abs(t.back().field[i] - phase * u0[i]) / A);
  line(7, "plane wave closed form, 1000 steps", worst <= 1e-11, worst, "<=",
       1e-11);

  RandomFieldSpec spec;
  spec.seed = 12;
  spec.band = 15;
  ComplexField u = seeded_random_field(g, spec);
  ComplexField round = propagate_linear(propagate_linear(u, 0.7), -0.7);
  double num = 0, den = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    num += std::norm(round[i] - u[i]);
    den += std::norm(u[i]);
  }
  double err = std::sqrt(num / den);
  line(7, "linear propagator unitary round trip", err <= 1e-13, err, "<=",
       1e-13);
}

// 8. Reproducibility: identical config+seed give byte-identical reports
//    (timing excluded); checkpoints round-trip bit exactly.
void criterion8() {
  ExperimentConfig c;
  c.kind = ExperimentKind::identity;
  c.dim = 2;
  c.points = 32;
  c.length = 2 * kPi;
  c.data.kind = DataKind::random;
  c.data.amplitude = 0.05;
  c.data.random.band = 5;
  c.data.random.seed = 9;
  c.T = 0.01;
  c.dt = 2e-3;
  c.seeds = 6;
  c.dealias = DealiasRule::none;
  auto r1 = run_identity_check(c, 1);
  auto r2 = run_identity_check(config_from_json(config_to_json(c)), 3);
  bool same = report_to_json(r1, false).dump(2) ==
              report_to_json(r2, false).dump(2);
  line(8, "byte-identical reports (sans timing)", same, same ? 0.0 : 1.0,
       "<=", 0.0);

  Grid g = make_grid(2, 16, 5.0);
  RandomFieldSpec spec;
  spec.seed = 31;
  spec.band = 7;
  ComplexField u = seeded_random_field(g, spec);
  auto dir = std::filesystem::temp_directory_path() / "fns_acceptance";
  std::filesystem::create_directories(dir);
  auto path = (dir / "c8.chk").string();
  write_checkpoint(path, u, 0.5, 1e-2);
  Checkpoint cp = read_checkpoint(path);
  bool exact = cp.grid == g && cp.time == 0.5 && cp.dt == 1e-2;
  for (std::size_t i = 0; i < u.size() && exact; ++i)
    exact = cp.field[i] == u[i];
  line(8, "checkpoint round trip bit-exact", exact, exact ? 0.0 : 1.0, "<=",
       0.0);
}

}  // namespace

int main(int argc, char** argv) {
  void (*criteria[])() = {criterion1, criterion2, criterion3, criterion4,
                          criterion5, criterion6, criterion7, criterion8};
  if (argc > 1) {
    int c = std::atoi(argv[1]);
    if (c < 1 || c > 8) {
      std::fprintf(stderr, "usage: acceptance [1..8]\n");
      return 2;
    }
    criteria[c - 1]();
  } else {
    for (auto* fn : criteria) fn();
  }
  if (g_failures) std::printf("%d acceptance check(s) failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
