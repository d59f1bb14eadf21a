#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fns/multipliers.hpp"
#include "fns/trajectory.hpp"
#include "fns/weights.hpp"

namespace fns {

// M(u) = 1/2 int |u|^2
double mass(const ComplexField& u);

// E(u) = 1/2 ||Lap u||_{L2}^2 + 1/4 ||u||_{L4}^4 ; Lap spectral, L4 by
// physical quadrature. Nonnegative for this defocusing sign.
double energy(const ComplexField& u);

// E(Iu) with the smoothing multiplier m_N at regularity s. N <= 0 means
// no smoothing (plain energy).
double modified_energy(const ComplexField& u, double N, double s);

// Spectral-sum Sobolev norm with symbol |k|^s (homogeneous) or
// (1+|k|^2)^{s/2}. For homogeneous s < 0 the mean mode is excluded.
double sobolev_norm(const ComplexField& u, double s, bool homogeneous);

// {f,g}_m = Im(f conj(g)) and {f,g}_p = Re(f grad(conj g) - g grad(conj f)),
// pointwise on the grid with spectral gradients.
struct BracketFields {
  std::vector<double> mass_bracket;
  std::vector<std::vector<double>> momentum_bracket;  // one per axis
};
BracketFields brackets(const ComplexField& f, const ComplexField& g);

// M_a(t) = 2 int d_j a Im(conj(u) d_j u)
double morawetz_action(const ComplexField& u, const WeightFunction& a);

// Both sides of the variation-rate identity
//   d/dt M_a = 2 int ( 2 d_jk(Lap a) d_j u d_k conj(u)
//                      - 1/2 (Lap^3 a) |u|^2
//                      - 4 d_jk a d_ik u d_ij conj(u)
//                      + (Lap^2 a) |grad u|^2
//                      - d_j a {|u|^2 u, u}_p^j ),
// with u_t substituted analytically through the equation (no time stepping).
// Requires the field band-limited to <= P/6 per axis so every quadrature
// involved is exact on the grid.
struct RateIdentityResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;  // |lhs-rhs| / (|lhs|+|rhs|+eps)
};
RateIdentityResult morawetz_rate_identity(const ComplexField& u,
                                          const WeightFunction& a);

// || |grad|^{-(n-5)/2} (|u|^2) ||_{L2}^2 evaluated spectrally with the mean
// mode of |u|^2 projected out; its Plancherel weightless contribution
// L^n |rho_hat(0)|^2 is reported separately. For n = 5 the operator is the
// identity and the value is ||u||_{L4}^4.
struct RieszBilinearResult {
  double value = 0.0;
  double mean_contribution = 0.0;
};
RieszBilinearResult riesz_bilinear(const ComplexField& u);

// ||u||_{M} = || |grad|^{-(n-5)/4} u ||_{L4([0,T];L4)} over the trajectory's
// snapshots, trapezoid rule in time. Identity multiplier for n = 5.
double interaction_norm(const Trajectory& traj);

// Interaction Morawetz action for the tensor weight a = |x-y|, computed via
// the two-convolution form
//   2 int [ J(x).(K*rho)(x) - rho(x) (K*J)(x) ] dx,
// K(z) = z/|z| sampled with the minimum-image convention, J = Im(conj u
// grad u), rho = |u|^2. rhs_product is the correlation-estimate right side
// sup-free factor ||u||_{Hdot 1/2}^2 ||u||_{L2}^2.
struct InteractionBoundResult {
  double action_bound = 0.0;
  double rhs_product = 0.0;
};
InteractionBoundResult interaction_action_bound(const ComplexField& u);

// Biharmonic-admissible space-time pair: 4/gamma = n(1/2 - 1/rho).
struct StrichartzPair {
  double gamma = 0.0;  // may be +infinity
  double rho = 0.0;
};
bool biharmonic_admissible(const StrichartzPair& p, int dim, double tol = 1e-12);

// Z_I(t) over the supplied pair set: the dyadic square-function space-time
// norm of P_M <Lap> I u, trapezoid rule in time, max over snapshots for
// gamma = infinity.
double z_norm(const Trajectory& traj, double N, double s,
              std::span<const StrichartzPair> pairs);

DiagnosticsRecord make_diagnostics(const ComplexField& u, double time,
                                   double N, double s,
                                   const WeightFunction* weight,
                                   double truncated_mass);

}  // namespace fns
