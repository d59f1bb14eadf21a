#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "fns/grid.hpp"

namespace fns::detail {

using cplx = std::complex<double>;

// Normalized DFT pair. Forward carries 1/P^n so that for u(x) = sum_k
// uhat_k e^{ikx} the coefficients come out directly; Parseval then reads
// cellvol * sum_x |u|^2 = L^n * sum_k |uhat|^2.
void dft_forward(const Grid& g, const cplx* in, cplx* out);
void dft_backward(const Grid& g, const cplx* in, cplx* out);

// Shared per-grid spectral tables, cached and safe for concurrent reads.
// k2[i] = |k|^2 at flat index i; mode i is in the dealias-retained set iff
// every axis index magnitude is <= points/4.
struct SpectralTables {
  std::vector<double> k2;
  std::vector<unsigned char> half_rule_keep;
};

std::shared_ptr<const SpectralTables> spectral_tables(const Grid& g);

}  // namespace fns::detail
