#include "fns/multipliers.hpp"

#include <cmath>
#include <stdexcept>

#include "fns/fft.hpp"

namespace fns {

namespace {

bool is_dyadic(double M) {
  if (M < 1.0) return false;
  double l = std::log2(M);
  return std::abs(l - std::round(l)) < 1e-12;
}

double smoothstep5(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

struct SymbolVisitor {
  double r;
  double operator()(const FractionalDerivative& m) const {
    if (r == 0.0) return m.s == 0.0 ? 1.0 : 0.0;
    return std::pow(r, m.s);
  }
  double operator()(const BesselPotential& m) const {
    return std::pow(1.0 + r * r, 0.5 * m.s);
  }
  double operator()(const BiharmonicBessel& m) const {
    double r2 = r * r;
    return std::pow(1.0 + r2 * r2, 0.5 * m.s);
  }
  double operator()(const RieszPotential& m) const {
    if (!(m.alpha > 0.0))
      throw std::invalid_argument("RieszPotential: alpha must be positive");
    if (r == 0.0) return 0.0;
    return std::pow(r, -m.alpha);
  }
  double operator()(const LittlewoodPaleyBand& m) const {
    if (!is_dyadic(m.M))
      throw std::invalid_argument("LittlewoodPaleyBand: M must be dyadic >= 1");
    if (m.M == 1.0) return r <= 1.0 ? 1.0 : 0.0;
    return (r > 0.5 * m.M && r <= m.M) ? 1.0 : 0.0;
  }
  double operator()(const LowPass& m) const { return r <= m.M ? 1.0 : 0.0; }
  double operator()(const IOperator& m) const {
    if (m.N < 1.0) throw std::invalid_argument("IOperator: N must be >= 1");
    if (!(m.s > 0.0 && m.s < 2.0))
      throw std::invalid_argument("IOperator: s must be in (0,2)");
    if (r <= m.N) return 1.0;
    if (r >= 2.0 * m.N) return std::pow(m.N / r, 2.0 - m.s);
    double chi = smoothstep5(std::log2(r / m.N));
    return std::pow(m.N / r, (2.0 - m.s) * chi);
  }
};

}  // namespace

double symbol_value(const MultiplierSpec& spec, double r) {
  if (r < 0.0) throw std::invalid_argument("symbol_value: r must be >= 0");
  return std::visit(SymbolVisitor{r}, spec);
}

ComplexField apply_multiplier(const ComplexField& f, const MultiplierSpec& spec,
                              double* discarded_mean_mass) {
  ComplexField spec_f = in_rep(f, Representation::spectral);
  const Grid& g = spec_f.grid();
  auto tables = detail::spectral_tables(g);
  auto vals = spec_f.values();
  const std::size_t n = g.size();
  if (discarded_mean_mass) *discarded_mean_mass = 0.0;
  if (std::holds_alternative<RieszPotential>(spec) && discarded_mean_mass) {
    *discarded_mean_mass = 0.5 * g.box_volume() * std::norm(vals[0]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    double sigma = std::visit(SymbolVisitor{std::sqrt(tables->k2[i])}, spec);
    vals[i] *= sigma;
  }
  if (f.rep() == Representation::physical) return to_physical(spec_f);
  return spec_f;
}

ComplexField lp_project(const ComplexField& f, double M) {
  if (!is_dyadic(M))
    throw std::invalid_argument("lp_project: M must be dyadic >= 1");
  return apply_multiplier(f, LittlewoodPaleyBand{M});
}

std::vector<double> lp_bands(const Grid& g) {
  std::vector<double> bands{1.0};
  double rmax = g.max_radius();
  for (double M = 2.0; M / 2.0 < rmax; M *= 2.0) bands.push_back(M);
  return bands;
}

std::vector<ComplexField> lp_partition(const ComplexField& f) {
  std::vector<ComplexField> blocks;
  for (double M : lp_bands(f.grid())) blocks.push_back(lp_project(f, M));
  return blocks;
}

ComplexField band_truncate(const ComplexField& f, int band) {
  ComplexField spec = in_rep(f, Representation::spectral);
  const Grid& g = spec.grid();
  const int P = g.points;
  std::vector<int> idx(g.dim, 0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (int a = 0; a < g.dim; ++a) {
      int ka = idx[a] < P / 2 ? idx[a] : idx[a] - P;
      if (std::abs(ka) > band) {
        spec[i] = 0.0;
        break;
      }
    }
    for (int a = g.dim - 1; a >= 0; --a) {
      if (++idx[a] < P) break;
      idx[a] = 0;
    }
  }
  if (f.rep() == Representation::physical) return to_physical(spec);
  return spec;
}

ComplexField dealias(const ComplexField& f, DealiasRule rule,
                     double* removed_mass) {
  if (removed_mass) *removed_mass = 0.0;
  if (rule == DealiasRule::none) return f;
  ComplexField spec_f = in_rep(f, Representation::spectral);
  const Grid& g = spec_f.grid();
  auto tables = detail::spectral_tables(g);
  auto vals = spec_f.values();
  const std::size_t n = g.size();
  double removed = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!tables->half_rule_keep[i]) {
      removed += std::norm(vals[i]);
      vals[i] = 0.0;
    }
  }
  if (removed_mass) *removed_mass = 0.5 * g.box_volume() * removed;
  if (f.rep() == Representation::physical) return to_physical(spec_f);
  return spec_f;
}

}  // namespace fns
