#pragma once

// Independent reference computations for the test suites. Everything here
// deliberately avoids the library's spectral code paths: direct lattice
// sums, finite differences, dense scans.

#include <complex>
#include <functional>
#include <vector>

#include "fns/field.hpp"
#include "fns/multipliers.hpp"

namespace fns::oracles {

// O(P^{2n}) double sum  sum_{x,y} rho(x) rho(y) G(x-y) dv^2  with the
// grid-periodized Riesz kernel G(z) = (1/L^n) sum_{k != 0} |k|^{-alpha}
// cos(k.z), built by direct summation over the frequency lattice.
double riesz_double_sum(const ComplexField& u, double alpha);

// O(P^{2n}) double sum of the interaction Morawetz action with the
// minimum-image unit kernel:
//   2 sum_{x,y} e(x-y) . (J(x) rho(y) - J(y) rho(x)) dv^2.
// Gradients for J = Im(conj u grad u) are taken spectrally by the caller
// and passed in to keep this routine a pure lattice sum.
double interaction_double_sum(const ComplexField& u,
                              const std::vector<std::vector<double>>& J);

// Dense 1-D scan over r in [0, rmax] returning max of f.
double scan_max(const std::function<double(double)>& f, double rmax,
                int samples);

// Fourth-order finite-difference Laplacian of samples on a refined uniform
// periodic 1-D grid. Extended precision end to end: composing two
// second-derivative stencils amplifies input rounding by 1/h^4.
std::vector<long double> fd_laplacian_1d(const std::vector<long double>& f,
                                         long double h);

// Trapezoid quadrature of |g|^2 on a refined grid for the energy oracle.
double refined_l2sq_1d(const std::function<double(double)>& g, double L,
                       int points);

}  // namespace fns::oracles
