#include "fns/functionals.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "fns/dynamics.hpp"
#include "fns/fft.hpp"

namespace fns {

namespace {

constexpr double kResidualFloor = 1e-300;

void require_physical(const ComplexField& u, const char* who) {
  if (u.rep() != Representation::physical)
    throw std::invalid_argument(std::string(who) +
                                ": physical representation required");
}

void require_same_grid(const ComplexField& f, const ComplexField& g,
                       const char* who) {
  if (!(f.grid() == g.grid()))
    throw std::invalid_argument(std::string(who) + ": grid mismatch");
}

// Apply an arbitrary radial symbol in one spectral pass.
ComplexField apply_radial(const ComplexField& f,
                          const std::function<double(double)>& sigma) {
  ComplexField spec = in_rep(f, Representation::spectral);
  auto tables = detail::spectral_tables(f.grid());
  auto vals = spec.values();
  for (std::size_t i = 0; i < vals.size(); ++i)
    vals[i] *= sigma(std::sqrt(tables->k2[i]));
  if (f.rep() == Representation::physical) return to_physical(spec);
  return spec;
}

// |grad|^{-(n-5)/4} resp. |grad|^{-(n-5)/2}: identity at n = 5, Riesz
// potential for n > 5, positive fractional derivative for n < 5.
MultiplierSpec interaction_smoother(int dim, double denom) {
  double expo = (dim - 5.0) / denom;
  if (expo == 0.0) return FractionalDerivative{0.0};
  if (expo > 0.0) return RieszPotential{expo};
  return FractionalDerivative{-expo};
}

}  // namespace

double mass(const ComplexField& u) {
  require_physical(u, "mass");
  double acc = 0.0;
  for (const auto& v : u.values()) acc += std::norm(v);
  return 0.5 * acc * u.grid().cell_volume();
}

double energy(const ComplexField& u) {
  require_physical(u, "energy");
  ComplexField spec = to_spectral(u);
  auto tables = detail::spectral_tables(u.grid());
  double grad2 = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i)
    grad2 += tables->k2[i] * tables->k2[i] * std::norm(spec[i]);
  grad2 *= u.grid().box_volume();
  double l4 = 0.0;
  for (const auto& v : u.values()) {
    double a2 = std::norm(v);
    l4 += a2 * a2;
  }
  l4 *= u.grid().cell_volume();
  return 0.5 * grad2 + 0.25 * l4;
}

double modified_energy(const ComplexField& u, double N, double s) {
  if (N <= 0.0) return energy(in_rep(u, Representation::physical));
  ComplexField iu = apply_multiplier(in_rep(u, Representation::physical),
                                     IOperator{N, s});
  return energy(iu);
}

double sobolev_norm(const ComplexField& u, double s, bool homogeneous) {
  ComplexField spec = in_rep(u, Representation::spectral);
  auto tables = detail::spectral_tables(u.grid());
  double acc = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    double k2 = tables->k2[i];
    double w;
    if (homogeneous) {
      if (k2 == 0.0)
        w = (s == 0.0) ? 1.0 : 0.0;  // mean excluded for s != 0
      else
        w = std::pow(k2, s);  // |k|^{2s}
    } else {
      w = std::pow(1.0 + k2, s);
    }
    acc += w * std::norm(spec[i]);
  }
  return std::sqrt(acc * u.grid().box_volume());
}

BracketFields brackets(const ComplexField& f, const ComplexField& g) {
  require_same_grid(f, g, "brackets");
  ComplexField fp = in_rep(f, Representation::physical);
  ComplexField gp = in_rep(g, Representation::physical);
  const int n = f.grid().dim;
  BracketFields out;
  out.mass_bracket.resize(fp.size());
  for (std::size_t i = 0; i < fp.size(); ++i)
    out.mass_bracket[i] = std::imag(fp[i] * std::conj(gp[i]));
  out.momentum_bracket.assign(n, std::vector<double>(fp.size()));
  for (int j = 0; j < n; ++j) {
    ComplexField dg = derivative(gp, j);
    ComplexField df = derivative(fp, j);
    for (std::size_t i = 0; i < fp.size(); ++i)
      out.momentum_bracket[j][i] =
          std::real(fp[i] * std::conj(dg[i]) - gp[i] * std::conj(df[i]));
  }
  return out;
}

double morawetz_action(const ComplexField& u, const WeightFunction& a) {
  require_same_grid(u, ComplexField(a.grid(), Representation::physical),
                    "morawetz_action");
  ComplexField up = in_rep(u, Representation::physical);
  const int n = u.grid().dim;
  double acc = 0.0;
  for (int j = 0; j < n; ++j) {
    ComplexField dj = derivative(up, j);
    const auto& da = a.grad(j);
    for (std::size_t i = 0; i < up.size(); ++i)
      acc += da[i] * std::imag(std::conj(up[i]) * dj[i]);
  }
  return 2.0 * acc * u.grid().cell_volume();
}

namespace {

// Relative spectral mass outside the per-axis band P/6; the identity's
// quadratures are exact only for such fields.
double out_of_band_fraction(const ComplexField& u, int band) {
  ComplexField spec = in_rep(u, Representation::spectral);
  const Grid& g = u.grid();
  const int P = g.points;
  std::vector<int> idx(g.dim, 0);
  double inside = 0.0, outside = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    bool in = true;
    for (int a = 0; a < g.dim; ++a) {
      int ka = idx[a] < P / 2 ? idx[a] : idx[a] - P;
      if (std::abs(ka) > band) {
        in = false;
        break;
      }
    }
    (in ? inside : outside) += std::norm(spec[i]);
    for (int a = g.dim - 1; a >= 0; --a) {
      if (++idx[a] < P) break;
      idx[a] = 0;
    }
  }
  double total = inside + outside;
  return total > 0.0 ? outside / total : 0.0;
}

}  // namespace

RateIdentityResult morawetz_rate_identity(const ComplexField& u,
                                          const WeightFunction& a) {
  ComplexField up = in_rep(u, Representation::physical);
  const Grid& g = up.grid();
  const int n = g.dim;
  const int band = g.points / 6;
  if (out_of_band_fraction(up, band) > 1e-12)
    throw std::invalid_argument(
        "morawetz_rate_identity: field is not band-limited to P/6 per axis; "
        "the identity test would be invalid");

  const double dv = g.cell_volume();
  ComplexField ut = rhs(up, DealiasRule::none);

  // lhs = 2 int d_j a [ Im(conj(u_t) d_j u) + Im(conj(u) d_j u_t) ]
  double lhs = 0.0;
  for (int j = 0; j < n; ++j) {
    ComplexField dju = derivative(up, j);
    ComplexField djut = derivative(ut, j);
    const auto& da = a.grad(j);
    double acc = 0.0;
    for (std::size_t i = 0; i < up.size(); ++i)
      acc += da[i] * (std::imag(std::conj(ut[i]) * dju[i]) +
                      std::imag(std::conj(up[i]) * djut[i]));
    lhs += acc;
  }
  lhs *= 2.0 * dv;

  // rhs, term by term
  double rhs_acc = 0.0;

  std::vector<ComplexField> du;
  du.reserve(n);
  for (int j = 0; j < n; ++j) du.push_back(derivative(up, j));

  // 2 d_jk(Lap a) d_j u d_k conj(u)
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const auto& c = a.hess_lap(j, k);
      double acc = 0.0;
      for (std::size_t i = 0; i < up.size(); ++i)
        acc += c[i] * std::real(du[j][i] * std::conj(du[k][i]));
      rhs_acc += 2.0 * acc;
    }

  // -1/2 (Lap^3 a) |u|^2
  {
    const auto& c = a.lap3();
    double acc = 0.0;
    for (std::size_t i = 0; i < up.size(); ++i)
      acc += c[i] * std::norm(up[i]);
    rhs_acc -= 0.5 * acc;
  }

  // -4 d_jk a d_ik u d_ij conj(u); second derivatives precomputed once,
  // upper triangle only
  {
    std::vector<std::vector<ComplexField>> d2(n);
    for (int j = 0; j < n; ++j) {
      d2[j].reserve(n - j);
      for (int k = j; k < n; ++k) d2[j].push_back(derivative(du[j], k));
    }
    auto second = [&](int a1, int a2) -> const ComplexField& {
      if (a1 > a2) std::swap(a1, a2);
      return d2[a1][a2 - a1];
    };
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const auto& c = a.hess(j, k);
        for (int i2 = 0; i2 < n; ++i2) {
          const ComplexField& dik = second(i2, k);
          const ComplexField& dij = second(i2, j);
          double acc = 0.0;
          for (std::size_t i = 0; i < up.size(); ++i)
            acc += c[i] * std::real(dik[i] * std::conj(dij[i]));
          rhs_acc -= 4.0 * acc;
        }
      }
  }

  // (Lap^2 a) |grad u|^2
  {
    const auto& c = a.lap2();
    double acc = 0.0;
    for (std::size_t i = 0; i < up.size(); ++i) {
      double g2 = 0.0;
      for (int j = 0; j < n; ++j) g2 += std::norm(du[j][i]);
      acc += c[i] * g2;
    }
    rhs_acc += acc;
  }

  // - d_j a {|u|^2 u, u}_p^j
  {
    ComplexField cubic(g, Representation::physical);
    for (std::size_t i = 0; i < up.size(); ++i)
      cubic[i] = std::norm(up[i]) * up[i];
    BracketFields br = brackets(cubic, up);
    for (int j = 0; j < n; ++j) {
      const auto& da = a.grad(j);
      double acc = 0.0;
      for (std::size_t i = 0; i < up.size(); ++i)
        acc += da[i] * br.momentum_bracket[j][i];
      rhs_acc -= acc;
    }
  }

  double rhs_val = 2.0 * rhs_acc * dv;
  RateIdentityResult r;
  r.lhs = lhs;
  r.rhs = rhs_val;
  r.residual =
      std::abs(lhs - rhs_val) / (std::abs(lhs) + std::abs(rhs_val) + kResidualFloor);
  return r;
}

RieszBilinearResult riesz_bilinear(const ComplexField& u) {
  const int n = u.grid().dim;
  if (n < 5)
    throw std::invalid_argument("riesz_bilinear: requires dimension >= 5");
  ComplexField up = in_rep(u, Representation::physical);
  RieszBilinearResult out;
  if (n == 5) {
    double l4 = lp_norm(up, 4.0);
    out.value = l4 * l4 * l4 * l4;
    out.mean_contribution = 0.0;
    return out;
  }
  ComplexField rho(u.grid(), Representation::physical);
  for (std::size_t i = 0; i < up.size(); ++i) rho[i] = std::norm(up[i]);
  ComplexField rho_hat = to_spectral(rho);
  auto tables = detail::spectral_tables(u.grid());
  const double alpha = n - 5.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < rho_hat.size(); ++i) {
    double k2 = tables->k2[i];
    if (k2 == 0.0) continue;
    acc += std::pow(k2, -0.5 * alpha) * std::norm(rho_hat[i]);
  }
  out.value = acc * u.grid().box_volume();
  out.mean_contribution = u.grid().box_volume() * std::norm(rho_hat[0]);
  return out;
}

double interaction_norm(const Trajectory& traj) {
  if (traj.snapshots.size() < 2)
    throw std::invalid_argument("interaction_norm: need at least 2 snapshots");
  const Grid& g = traj.snapshots.front().field.grid();
  MultiplierSpec smoother = interaction_smoother(g.dim, 4.0);
  std::vector<double> y4(traj.snapshots.size());
  for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
    ComplexField w = apply_multiplier(
        in_rep(traj.snapshots[i].field, Representation::physical), smoother);
    double l4 = lp_norm(w, 4.0);
    y4[i] = l4 * l4 * l4 * l4;
  }
  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < y4.size(); ++i) {
    double dt = traj.snapshots[i + 1].time - traj.snapshots[i].time;
    integral += 0.5 * dt * (y4[i] + y4[i + 1]);
  }
  return std::pow(integral, 0.25);
}

namespace {

// Minimum-image displacement of grid offset t (in points) along one axis.
double min_image(int t, int P, double h) {
  double z = t * h;
  double L = P * h;
  if (z >= 0.5 * L) z -= L;
  return z;
}

}  // namespace

InteractionBoundResult interaction_action_bound(const ComplexField& u) {
  ComplexField up = in_rep(u, Representation::physical);
  const Grid& g = up.grid();
  const int n = g.dim;
  const int P = g.points;
  const double h = g.length / P;
  const double dv = g.cell_volume();
  const double Ln = g.box_volume();

  // rho and J
  ComplexField rho(g, Representation::physical);
  for (std::size_t i = 0; i < up.size(); ++i) rho[i] = std::norm(up[i]);
  std::vector<ComplexField> J;
  J.reserve(n);
  for (int j = 0; j < n; ++j) {
    ComplexField dj = derivative(up, j);
    ComplexField Jj(g, Representation::physical);
    for (std::size_t i = 0; i < up.size(); ++i)
      Jj[i] = std::imag(std::conj(up[i]) * dj[i]);
    J.push_back(std::move(Jj));
  }

  ComplexField rho_hat = to_spectral(rho);
  std::vector<ComplexField> J_hat;
  J_hat.reserve(n);
  for (int j = 0; j < n; ++j) J_hat.push_back(to_spectral(J[j]));

  double T1 = 0.0, T2 = 0.0;
  ComplexField conv_acc(g, Representation::spectral);
  for (int j = 0; j < n; ++j) {
    // kernel component K_j(z) = z_j/|z|, minimum image, 0 at z = 0
    ComplexField K(g, Representation::physical);
    std::vector<int> idx(n, 0);
    for (std::size_t i = 0; i < K.size(); ++i) {
      double r2 = 0.0;
      double zj = 0.0;
      for (int a = 0; a < n; ++a) {
        double z = min_image(idx[a], P, h);
        r2 += z * z;
        if (a == j) zj = z;
      }
      K[i] = r2 > 0.0 ? zj / std::sqrt(r2) : 0.0;
      for (int a = n - 1; a >= 0; --a) {
        if (++idx[a] < P) break;
        idx[a] = 0;
      }
    }
    ComplexField K_hat = to_spectral(K);
    // (K_j * rho)(x) = L^n ifft(K_hat rho_hat)
    ComplexField prod(g, Representation::spectral);
    for (std::size_t i = 0; i < prod.size(); ++i)
      prod[i] = K_hat[i] * rho_hat[i] * Ln;
    ComplexField conv = to_physical(prod);
    for (std::size_t i = 0; i < conv.size(); ++i)
      T1 += J[j][i].real() * conv[i].real();
    // accumulate K_hat . J_hat for the second convolution
    for (std::size_t i = 0; i < conv_acc.size(); ++i)
      conv_acc[i] += K_hat[i] * J_hat[j][i] * Ln;
  }
  ComplexField convJ = to_physical(conv_acc);
  for (std::size_t i = 0; i < convJ.size(); ++i)
    T2 += rho[i].real() * convJ[i].real();
  T1 *= dv;
  T2 *= dv;

  InteractionBoundResult out;
  out.action_bound = 2.0 * (T1 - T2);
  double hhalf = sobolev_norm(up, 0.5, true);
  double l2 = lp_norm(up, 2.0);
  out.rhs_product = hhalf * hhalf * l2 * l2;
  return out;
}

bool biharmonic_admissible(const StrichartzPair& p, int dim, double tol) {
  if (p.gamma < 2.0 || p.rho < 2.0) return false;
  double lhs = std::isinf(p.gamma) ? 0.0 : 4.0 / p.gamma;
  double rhs = dim * (0.5 - 1.0 / p.rho);
  return std::abs(lhs - rhs) <= tol;
}

double z_norm(const Trajectory& traj, double N, double s,
              std::span<const StrichartzPair> pairs) {
  if (traj.snapshots.empty())
    throw std::invalid_argument("z_norm: empty trajectory");
  const Grid& g = traj.snapshots.front().field.grid();
  for (const auto& p : pairs) {
    if (!biharmonic_admissible(p, g.dim))
      throw std::invalid_argument(
          "z_norm: pair (" + std::to_string(p.gamma) + ", " +
          std::to_string(p.rho) + ") violates 4/gamma = n(1/2 - 1/rho)");
  }

  auto bands = lp_bands(g);
  const std::size_t ns = traj.snapshots.size();

  double best = 0.0;
  for (const auto& pair : pairs) {
    double sq_sum = 0.0;
    for (double M : bands) {
      // combined symbol: sharp band x <Lap> x m_N in one pass
      std::vector<double> y(ns);
      for (std::size_t i = 0; i < ns; ++i) {
        const ComplexField& f = traj.snapshots[i].field;
        ComplexField blocked =
            apply_radial(in_rep(f, Representation::physical), [&](double r) {
              double band_val =
                  symbol_value(LittlewoodPaleyBand{M}, r);
              if (band_val == 0.0) return 0.0;
              return band_val * symbol_value(BiharmonicBessel{1.0}, r) *
                     symbol_value(IOperator{N, s}, r);
            });
        y[i] = lp_norm(blocked, pair.rho);
      }
      double time_norm;
      if (std::isinf(pair.gamma)) {
        time_norm = 0.0;
        for (double v : y) time_norm = std::max(time_norm, v);
      } else {
        double integral = 0.0;
        for (std::size_t i = 0; i + 1 < ns; ++i) {
          double dt = traj.snapshots[i + 1].time - traj.snapshots[i].time;
          integral += 0.5 * dt *
                      (std::pow(y[i], pair.gamma) + std::pow(y[i + 1], pair.gamma));
        }
        time_norm = std::pow(integral, 1.0 / pair.gamma);
      }
      sq_sum += time_norm * time_norm;
    }
    best = std::max(best, std::sqrt(sq_sum));
  }
  return best;
}

bool DiagnosticsRecord::all_finite() const {
  for (double v : {time, mass, energy, modified_energy, h_half_norm, hs_norm,
                   morawetz_action, pointwise_max, truncated_mass})
    if (!std::isfinite(v)) return false;
  return true;
}

DiagnosticsRecord make_diagnostics(const ComplexField& u, double time,
                                   double N, double s,
                                   const WeightFunction* weight,
                                   double truncated_mass) {
  DiagnosticsRecord r;
  r.time = time;
  ComplexField up = in_rep(u, Representation::physical);
  r.mass = mass(up);
  r.energy = energy(up);
  r.modified_energy = modified_energy(up, N, s);
  r.h_half_norm = sobolev_norm(up, 0.5, true);
  r.hs_norm = sobolev_norm(up, s, false);
  r.morawetz_action = weight ? morawetz_action(up, *weight) : 0.0;
  r.pointwise_max = up.max_abs();
  r.truncated_mass = truncated_mass;
  return r;
}

}  // namespace fns
