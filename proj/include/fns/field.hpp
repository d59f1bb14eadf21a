#pragma once

#include <complex>
#include <span>
#include <vector>

#include "fns/grid.hpp"

namespace fns {

enum class Representation { physical, spectral };

// Complex samples on a Grid, row-major axis order, tagged with the
// representation they currently live in. Operations are pure: inputs are
// never modified, transforms hand back a fresh field.
class ComplexField {
 public:
  using value_type = std::complex<double>;

  ComplexField() = default;
  ComplexField(const Grid& g, Representation rep)
      : grid_(g), rep_(rep), values_(g.size()) {}

  static ComplexField zeros(const Grid& g,
                            Representation rep = Representation::physical) {
    return ComplexField(g, rep);
  }

  const Grid& grid() const { return grid_; }
  Representation rep() const { return rep_; }
  std::size_t size() const { return values_.size(); }

  std::span<const value_type> values() const { return values_; }
  std::span<value_type> values() { return values_; }
  const value_type& operator[](std::size_t i) const { return values_[i]; }
  value_type& operator[](std::size_t i) { return values_[i]; }

  bool all_finite() const;
  double max_abs() const;

 private:
  Grid grid_;
  Representation rep_ = Representation::physical;
  std::vector<value_type> values_;
};

// Strict-direction transforms; the representation tag must match.
ComplexField to_spectral(const ComplexField& f);
ComplexField to_physical(const ComplexField& f);
// Convenience: transform only if needed.
ComplexField in_rep(const ComplexField& f, Representation r);

// Spectral calculus on fields (input in any representation, output matches
// the input representation).
ComplexField derivative(const ComplexField& f, int axis);
ComplexField laplacian(const ComplexField& f);
ComplexField biharmonic(const ComplexField& f);

// Quadrature of real samples against the grid's cell volume.
double integrate(const Grid& g, std::span<const double> samples);

// L^p norm of a physical-representation field (p = inf allowed).
double lp_norm(const ComplexField& f, double p);

}  // namespace fns
