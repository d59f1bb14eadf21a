#pragma once

#include <functional>
#include <memory>
#include <stdexcept>

#include "fns/multipliers.hpp"
#include "fns/trajectory.hpp"
#include "fns/weights.hpp"

namespace fns {

// i u_t + Lap^2 u + |u|^2 u = 0, i.e. u_t = i(Lap^2 u + |u|^2 u).

class BlowupError : public std::runtime_error {
 public:
  BlowupError(const std::string& what, std::shared_ptr<Trajectory> partial)
      : std::runtime_error(what), partial_trajectory(std::move(partial)) {}
  std::shared_ptr<Trajectory> partial_trajectory;
};

struct SimState {
  ComplexField field;  // physical representation
  double time = 0.0;
  long step_count = 0;
  double dt = 0.0;
  DealiasRule dealias_rule = DealiasRule::none;
  bool nonlinearity = true;
  double truncated_mass = 0.0;  // cumulative
  double initial_max = 0.0;     // for blow-up detection
};

// u_t = i(Lap^2 u + D[|u|^2 u]) with D the configured dealiasing.
ComplexField rhs(const ComplexField& u, DealiasRule rule = DealiasRule::none);

// e^{i t Lap^2}: multiplies mode k by e^{i t |k|^4}. Exact and unitary.
ComplexField propagate_linear(const ComplexField& u, double t);

// Strang composition half-nonlinear / full-linear / half-nonlinear. Both
// sub-flows are exact isometries of the discrete L^2 norm; dealiasing (when
// on) is applied after each nonlinear half-kick and the removed mass is
// accumulated in truncated_mass.
SimState step_strang(SimState state);

struct EvolveOptions {
  DealiasRule dealias = DealiasRule::half_rule;
  bool nonlinearity = true;
  bool store_fields = true;
  double imethod_N = 0.0;  // 0: record modified_energy = energy
  double imethod_s = 1.0;
  std::shared_ptr<const WeightFunction> weight;  // for the action diagnostic
  double blowup_factor = 1e6;
};

using Observer = std::function<void(const SimState&)>;

// Fixed-step evolution with snapshots every `stride` steps (plus t=0 and
// t=T). Deterministic given its inputs. Throws BlowupError carrying the
// partial trajectory on NaN/overflow.
Trajectory evolve(const ComplexField& u0, double T, double dt, int stride,
                  const EvolveOptions& opts = {},
                  const std::vector<Observer>& observers = {});

}  // namespace fns
