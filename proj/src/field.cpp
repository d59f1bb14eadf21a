#include "fns/field.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fns/fft.hpp"

namespace fns {

bool ComplexField::all_finite() const {
  for (const auto& v : values_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

double ComplexField::max_abs() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

ComplexField to_spectral(const ComplexField& f) {
  if (f.rep() != Representation::physical)
    throw std::invalid_argument(
        "to_spectral: representation-tag mismatch (field is already "
        "spectral)");
  ComplexField out(f.grid(), Representation::spectral);
  detail::dft_forward(f.grid(), f.values().data(), out.values().data());
  return out;
}

ComplexField to_physical(const ComplexField& f) {
  if (f.rep() != Representation::spectral)
    throw std::invalid_argument(
        "to_physical: representation-tag mismatch (field is already "
        "physical)");
  ComplexField out(f.grid(), Representation::physical);
  detail::dft_backward(f.grid(), f.values().data(), out.values().data());
  return out;
}

ComplexField in_rep(const ComplexField& f, Representation r) {
  if (f.rep() == r) return f;
  return r == Representation::spectral ? to_spectral(f) : to_physical(f);
}

namespace {

// Apply a per-mode complex factor depending on the signed axis index.
template <typename Fn>
ComplexField apply_mode_factor(const ComplexField& f, Fn&& factor) {
  ComplexField spec = in_rep(f, Representation::spectral);
  const Grid& g = spec.grid();
  const int P = g.points;
  std::vector<int> idx(g.dim, 0);
  const std::size_t n = g.size();
  auto vals = spec.values();
  std::vector<int> ka(g.dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (int a = 0; a < g.dim; ++a)
      ka[a] = idx[a] < P / 2 ? idx[a] : idx[a] - P;
    vals[i] *= factor(ka.data());
    for (int a = g.dim - 1; a >= 0; --a) {
      if (++idx[a] < P) break;
      idx[a] = 0;
    }
  }
  if (f.rep() == Representation::physical) return to_physical(spec);
  return spec;
}

}  // namespace

ComplexField derivative(const ComplexField& f, int axis) {
  if (axis < 0 || axis >= f.grid().dim)
    throw std::invalid_argument("derivative: axis out of range");
  const double dk = f.grid().freq_step();
  return apply_mode_factor(f, [axis, dk](const int* ka) {
    return std::complex<double>(0.0, dk * ka[axis]);
  });
}

ComplexField laplacian(const ComplexField& f) {
  const double dk = f.grid().freq_step();
  const int dim = f.grid().dim;
  return apply_mode_factor(f, [dk, dim](const int* ka) {
    double k2 = 0.0;
    for (int a = 0; a < dim; ++a) k2 += double(ka[a]) * double(ka[a]);
    return std::complex<double>(-k2 * dk * dk, 0.0);
  });
}

ComplexField biharmonic(const ComplexField& f) {
  const double dk = f.grid().freq_step();
  const int dim = f.grid().dim;
  return apply_mode_factor(f, [dk, dim](const int* ka) {
    double k2 = 0.0;
    for (int a = 0; a < dim; ++a) k2 += double(ka[a]) * double(ka[a]);
    k2 *= dk * dk;
    return std::complex<double>(k2 * k2, 0.0);
  });
}

double integrate(const Grid& g, std::span<const double> samples) {
  if (samples.size() != g.size())
    throw std::invalid_argument("integrate: sample count does not match grid");
  double acc = 0.0;
  for (double s : samples) acc += s;
  return acc * g.cell_volume();
}

double lp_norm(const ComplexField& f, double p) {
  if (f.rep() != Representation::physical)
    throw std::invalid_argument("lp_norm: physical representation required");
  if (std::isinf(p)) return f.max_abs();
  if (!(p > 0)) throw std::invalid_argument("lp_norm: p must be positive");
  double acc = 0.0;
  for (const auto& v : f.values()) acc += std::pow(std::abs(v), p);
  return std::pow(acc * f.grid().cell_volume(), 1.0 / p);
}

}  // namespace fns
