#include "fns/weights.hpp"

#include <cmath>
#include <stdexcept>

#include "fns/fft.hpp"
#include "fns/multipliers.hpp"

namespace fns {

namespace {

std::vector<double> real_part(const ComplexField& f) {
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i].real();
  return out;
}

ComplexField from_real(const Grid& g, const std::vector<double>& v) {
  ComplexField f(g, Representation::physical);
  for (std::size_t i = 0; i < v.size(); ++i) f[i] = v[i];
  return f;
}

}  // namespace

std::size_t WeightFunction::packed(int j, int k) const {
  if (j > k) std::swap(j, k);
  // index into the upper-triangular pack of an n x n symmetric matrix
  return static_cast<std::size_t>(j) * grid_.dim -
         static_cast<std::size_t>(j) * (j - 1) / 2 + (k - j);
}

WeightFunction WeightFunction::periodic_bump(const Grid& g,
                                             std::vector<double> center,
                                             double kappa, int band_limit) {
  if (static_cast<int>(center.size()) != g.dim)
    throw std::invalid_argument("periodic_bump: center dimension mismatch");
  if (band_limit < 1 || band_limit >= g.points / 2)
    throw std::invalid_argument("periodic_bump: band_limit out of range");
  WeightFunction w(Kind::periodic, g);
  w.center_ = std::move(center);

  const int P = g.points;
  const double h = g.length / P;
  std::vector<double> samples(g.size());
  std::vector<int> idx(g.dim, 0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    double phase_sum = 0.0;
    for (int a = 0; a < g.dim; ++a) {
      double x = idx[a] * h;
      phase_sum += std::cos(2.0 * kPi * (x - w.center_[a]) / g.length) - 1.0;
    }
    samples[i] = std::exp(kappa * phase_sum);
    for (int a = g.dim - 1; a >= 0; --a) {
      if (++idx[a] < P) break;
      idx[a] = 0;
    }
  }
  ComplexField af = band_truncate(from_real(g, samples), band_limit);
  w.a_ = real_part(af);
  w.grad_.resize(g.dim);
  for (int j = 0; j < g.dim; ++j) w.grad_[j] = real_part(derivative(af, j));
  return w;
}

WeightFunction WeightFunction::regularized_radial(const Grid& g,
                                                  std::vector<double> center,
                                                  double epsilon) {
  if (static_cast<int>(center.size()) != g.dim)
    throw std::invalid_argument(
        "regularized_radial: center dimension mismatch");
  if (!(epsilon > 0.0))
    throw std::invalid_argument("regularized_radial: epsilon must be > 0");
  WeightFunction w(Kind::radial, g);
  w.center_ = std::move(center);
  w.epsilon_ = epsilon;

  const int P = g.points;
  const double h = g.length / P;
  const double e = epsilon * epsilon;
  w.a_.resize(g.size());
  w.grad_.assign(g.dim, std::vector<double>(g.size()));
  std::vector<int> idx(g.dim, 0);
  std::vector<double> disp(g.dim);
  for (std::size_t i = 0; i < g.size(); ++i) {
    double u = 0.0;
    for (int a = 0; a < g.dim; ++a) {
      double d = idx[a] * h - w.center_[a];
      d -= g.length * std::round(d / g.length);  // minimum image
      disp[a] = d;
      u += d * d;
    }
    double q = u + e;
    double aval = std::sqrt(q);
    w.a_[i] = aval;
    for (int a = 0; a < g.dim; ++a) w.grad_[a][i] = disp[a] / aval;
    for (int a = g.dim - 1; a >= 0; --a) {
      if (++idx[a] < P) break;
      idx[a] = 0;
    }
  }
  return w;
}

void WeightFunction::ensure_derived() const {
  std::lock_guard<std::mutex> lock(*mutex_);
  if (derived_) return;
  auto d = std::make_shared<Derived>();
  const Grid& g = grid_;
  const int n = g.dim;
  const std::size_t npack = static_cast<std::size_t>(n) * (n + 1) / 2;

  if (kind_ == Kind::periodic) {
    ComplexField af = from_real(g, a_);
    d->lap = real_part(laplacian(af));
    ComplexField lap_f = from_real(g, d->lap);
    d->lap2 = real_part(laplacian(lap_f));
    d->lap3 = real_part(laplacian(from_real(g, d->lap2)));
    d->hess.resize(npack);
    d->hess_lap.resize(npack);
    for (int j = 0; j < n; ++j) {
      ComplexField dj = derivative(af, j);
      ComplexField dj_lap = derivative(lap_f, j);
      for (int k = j; k < n; ++k) {
        d->hess[packed(j, k)] = real_part(derivative(dj, k));
        d->hess_lap[packed(j, k)] = real_part(derivative(dj_lap, k));
      }
    }
  } else {
    // radial closed forms in q = rho^2 + eps^2, u = rho^2, e = eps^2:
    //   Lap a         = ((n-1)q + e) q^{-3/2}
    //   d_jk a        = delta_jk q^{-1/2} - w_j w_k q^{-3/2}
    //   d_jk(Lap a)   = delta_jk cg1 + w_j w_k cg2 with
    //     cg1 = -((n-1)q + 3e) q^{-5/2}
    //     cg2 = (3(n-1)q^2 + 3(6-n)e q - 15 e^2) q^{-7/2} acting on w_j w_k / rho^2
    //   Lap^2 a       = (A q^2 + B e q + C e^2) q^{-7/2},
    //     A = -(n-1)(n-3), B = -6(n-3), C = -15
    //   Lap^3 a       = (-n S q - 2 u q (6A q + 5B e) + 9 u S) q^{-11/2},
    //     S = 3A q^2 + 5B e q + 7C e^2
    // eps -> 0 limits reproduce (n-1)/rho, -(n-1)(n-3)/rho^3,
    // 3(n-1)(n-3)(n-5)/rho^5.
    const double e = epsilon_ * epsilon_;
    const double A = -double(n - 1) * (n - 3);
    const double B = -6.0 * (n - 3);
    const double C = -15.0;
    const int P = g.points;
    const double h = g.length / P;
    d->lap.resize(g.size());
    d->lap2.resize(g.size());
    d->lap3.resize(g.size());
    d->hess.assign(npack, std::vector<double>(g.size()));
    d->hess_lap.assign(npack, std::vector<double>(g.size()));
    std::vector<int> idx(n, 0);
    std::vector<double> disp(n);
    for (std::size_t i = 0; i < g.size(); ++i) {
      double u = 0.0;
      for (int a = 0; a < n; ++a) {
        double dd = idx[a] * h - center_[a];
        dd -= g.length * std::round(dd / g.length);
        disp[a] = dd;
        u += dd * dd;
      }
      const double q = u + e;
      const double q12 = std::sqrt(q);
      const double q32 = q * q12, q52 = q * q32, q72 = q * q52;
      const double q112 = q * q * q72;
      d->lap[i] = ((n - 1) * q + e) / q32;
      d->lap2[i] = (A * q * q + B * e * q + C * e * e) / q72;
      const double S = 3 * A * q * q + 5 * B * e * q + 7 * C * e * e;
      d->lap3[i] = (-n * S * q - 2 * u * q * (6 * A * q + 5 * B * e) + 9 * u * S) / q112;
      const double cg1 = -((n - 1) * q + 3 * e) / q52;
      const double cg2 =
          (3 * (n - 1) * q * q + 3 * (6 - n) * e * q - 15 * e * e) / q72;
      for (int j = 0; j < n; ++j)
        for (int k = j; k < n; ++k) {
          double wjk = disp[j] * disp[k];
          double del = (j == k) ? 1.0 : 0.0;
          // cg2 vanishes at rho=0, so the direction ratio w_j w_k / rho^2
          // can be taken as 0 there
          double ratio = (u > 0.0) ? wjk / u : 0.0;
          d->hess[packed(j, k)][i] = del / q12 - wjk / q32;
          d->hess_lap[packed(j, k)][i] = del * cg1 + ratio * cg2;
        }
      for (int a = n - 1; a >= 0; --a) {
        if (++idx[a] < P) break;
        idx[a] = 0;
      }
    }
  }
  derived_ = std::move(d);
}

const std::vector<double>& WeightFunction::hess(int j, int k) const {
  ensure_derived();
  return derived_->hess[packed(j, k)];
}
const std::vector<double>& WeightFunction::lap() const {
  ensure_derived();
  return derived_->lap;
}
const std::vector<double>& WeightFunction::hess_lap(int j, int k) const {
  ensure_derived();
  return derived_->hess_lap[packed(j, k)];
}
const std::vector<double>& WeightFunction::lap2() const {
  ensure_derived();
  return derived_->lap2;
}
const std::vector<double>& WeightFunction::lap3() const {
  ensure_derived();
  return derived_->lap3;
}

}  // namespace fns
