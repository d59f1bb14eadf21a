#pragma once

#include <variant>
#include <vector>

#include "fns/field.hpp"

namespace fns {

// Radial Fourier multipliers. Every kind maps to a real symbol
// sigma(|k|) >= 0 evaluated on the grid's frequency lattice.
struct FractionalDerivative {
  double s;  // symbol r^s; r=0 with s<0 maps to 0 (mean-mode projection)
};
struct BesselPotential {
  double s;  // (1 + r^2)^{s/2}
};
struct BiharmonicBessel {
  double s = 1.0;  // (1 + r^4)^{s/2}; s=1 is the biharmonic counterpart of
                   // the Bessel potential, sitting at the H^2 level
};
struct RieszPotential {
  double alpha;  // r^{-alpha}, alpha > 0; the mean mode is projected out
};
struct LittlewoodPaleyBand {
  double M;  // sharp dyadic annulus: |k| <= 1 for M=1, M/2 < |k| <= M else
};
struct LowPass {
  double M;  // sharp cutoff |k| <= M
};
struct IOperator {
  double N;  // m_N(r): 1 for r <= N, (N/r)^{2-s} for r >= 2N, and
  double s;  // (N/r)^{(2-s)*chi(log2(r/N))} in between with chi the quintic
             // smoothstep; nonincreasing by construction, asserted in tests
};

using MultiplierSpec =
    std::variant<FractionalDerivative, BesselPotential, BiharmonicBessel,
                 RieszPotential, LittlewoodPaleyBand, LowPass, IOperator>;

// sigma(r) for r >= 0. Total on valid inputs.
double symbol_value(const MultiplierSpec& spec, double r);

// Multiply every spectral coefficient by sigma(|k|). Output representation
// matches the input. For RieszPotential the discarded mean-mode mass
// (1/2 * L^n * |uhat_0|^2) is reported through discarded_mean_mass when a
// destination is supplied.
ComplexField apply_multiplier(const ComplexField& f, const MultiplierSpec& spec,
                              double* discarded_mean_mass = nullptr);

// Sharp dyadic Littlewood-Paley projection; P_1 is the low-pass block.
ComplexField lp_project(const ComplexField& f, double M);
// All blocks M = 1, 2, 4, ... covering the lattice; sums back to f.
std::vector<ComplexField> lp_partition(const ComplexField& f);
// The list of dyadic M values lp_partition uses for this grid.
std::vector<double> lp_bands(const Grid& g);

// Zero every spectral mode with any axis index magnitude above `band`.
ComplexField band_truncate(const ComplexField& f, int band);

enum class DealiasRule { none, half_rule };

// half_rule zeroes every mode with any axis index |k_a| > P/4 so that cubic
// products of retained modes stay clear of the retained band after wrap.
// Reports the removed mass (1/2 * L^n * sum |uhat|^2 over zeroed modes).
ComplexField dealias(const ComplexField& f, DealiasRule rule,
                     double* removed_mass = nullptr);

}  // namespace fns
