#pragma once

#include "fns/config.hpp"
#include "fns/dynamics.hpp"
#include "fns/report.hpp"

namespace fns {

// Ordinary least squares on (log x, log y). residual is the RMS of the fit
// residuals in log space. Requires >= 3 points with distinct positive x.
struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
};
LogLogFit fit_loglog_slope(std::span<const double> x,
                           std::span<const double> y);

// lambda ~ N^{(2-s)/(s - (n/2 - 2))}; requires s > n/2 - 2.
double compute_lambda(double N, double s, int dim);

// u^lambda(x) = lambda^{-2} u(x/lambda) on the grid with box lambda*L and
// the same point count; exact on matched grids.
ComplexField scale_field(const ComplexField& u, double lambda);

// Studies. All deterministic given (config, seeds); `threads` only controls
// how independent cells are scheduled.
ExperimentReport run_conservation_study(const ExperimentConfig& c);
ExperimentReport run_identity_check(const ExperimentConfig& c, int threads = 1);
ExperimentReport run_acl_sweep(const ExperimentConfig& c);
ExperimentReport run_morawetz_study(const ExperimentConfig& c);
ExperimentReport run_lemma1_check(const ExperimentConfig& c, int threads = 1);
ExperimentReport run_scattering_proxy(const ExperimentConfig& c);

ExperimentReport run_experiment(const ExperimentConfig& c, int threads = 1);

}  // namespace fns
