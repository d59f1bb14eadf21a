#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "fns/field.hpp"

namespace fns {

// Real-valued Morawetz weight a(x) with all derivatives the rate identity
// needs: grad, Hessian, Lap a, d_jk(Lap a), Lap^2 a, Lap^3 a.
//
// periodic_bump: a = exp(kappa * sum_j (cos(2pi(x_j-c_j)/L) - 1)), spectrally
// truncated to per-axis index |k_a| <= band_limit at construction so that all
// quadratures against band-limited fields stay exact. Derivatives are the
// spectral derivatives of the truncated a.
//
// regularized_radial: a = sqrt(|x-c|^2 + eps^2) with minimum-image
// displacement and closed-form radial derivatives. Not smooth across the
// cell seam; meant for diagnostics, not for the identity check.
class WeightFunction {
 public:
  static WeightFunction periodic_bump(const Grid& g,
                                      std::vector<double> center, double kappa,
                                      int band_limit = 3);
  static WeightFunction regularized_radial(const Grid& g,
                                           std::vector<double> center,
                                           double epsilon);

  const Grid& grid() const { return grid_; }
  const std::vector<double>& a() const { return a_; }
  const std::vector<double>& grad(int j) const { return grad_.at(j); }
  const std::vector<double>& hess(int j, int k) const;
  const std::vector<double>& lap() const;
  const std::vector<double>& hess_lap(int j, int k) const;
  const std::vector<double>& lap2() const;
  const std::vector<double>& lap3() const;

 private:
  enum class Kind { periodic, radial };

  WeightFunction(Kind kind, const Grid& g) : kind_(kind), grid_(g) {}
  void ensure_derived() const;

  Kind kind_;
  Grid grid_;
  std::vector<double> center_;
  double epsilon_ = 0.0;
  std::vector<double> a_;
  std::vector<std::vector<double>> grad_;

  struct Derived {
    std::vector<std::vector<double>> hess;      // packed j<=k
    std::vector<double> lap;
    std::vector<std::vector<double>> hess_lap;  // packed j<=k
    std::vector<double> lap2;
    std::vector<double> lap3;
  };
  mutable std::shared_ptr<std::mutex> mutex_ = std::make_shared<std::mutex>();
  mutable std::shared_ptr<const Derived> derived_;

  std::size_t packed(int j, int k) const;
};

}  // namespace fns
