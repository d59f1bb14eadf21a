#include "fns/dynamics.hpp"

#include <cmath>

#include "fns/fft.hpp"
#include "fns/functionals.hpp"

namespace fns {

ComplexField rhs(const ComplexField& u, DealiasRule rule) {
  if (u.rep() != Representation::physical)
    throw std::invalid_argument("rhs: physical representation required");
  ComplexField cubic(u.grid(), Representation::physical);
  for (std::size_t i = 0; i < u.size(); ++i)
    cubic[i] = std::norm(u[i]) * u[i];
  if (rule != DealiasRule::none) cubic = dealias(cubic, rule);
  ComplexField bi = biharmonic(u);
  ComplexField out(u.grid(), Representation::physical);
  const std::complex<double> iu(0.0, 1.0);
  for (std::size_t i = 0; i < u.size(); ++i)
    out[i] = iu * (bi[i] + cubic[i]);
  if (!out.all_finite())
    throw std::runtime_error(
        "rhs: non-finite value (blow-up at current resolution)");
  return out;
}

ComplexField propagate_linear(const ComplexField& u, double t) {
  ComplexField spec = in_rep(u, Representation::spectral);
  auto tables = detail::spectral_tables(u.grid());
  auto vals = spec.values();
  for (std::size_t i = 0; i < vals.size(); ++i) {
    double k4 = tables->k2[i] * tables->k2[i];
    vals[i] *= std::polar(1.0, t * k4);
  }
  if (u.rep() == Representation::physical) return to_physical(spec);
  return spec;
}

namespace {

// |u| is preserved pointwise by the nonlinear sub-flow, so the half-kick
// u -> e^{i |u|^2 dt/2} u is its exact solution.
void half_kick(ComplexField& u, double dt) {
  for (auto& v : u.values()) v *= std::polar(1.0, 0.5 * dt * std::norm(v));
}

}  // namespace

SimState step_strang(SimState state) {
  if (!(state.dt > 0.0)) throw std::invalid_argument("step_strang: dt <= 0");
  ComplexField& u = state.field;
  if (u.rep() != Representation::physical)
    throw std::invalid_argument("step_strang: physical representation required");
  if (state.initial_max == 0.0) state.initial_max = u.max_abs();

  const bool dealiasing = state.dealias_rule != DealiasRule::none;
  double removed = 0.0;

  if (state.nonlinearity) {
    half_kick(u, state.dt);
    if (dealiasing) {
      double r = 0.0;
      u = dealias(u, state.dealias_rule, &r);
      removed += r;
    }
  }
  u = propagate_linear(u, state.dt);
  if (state.nonlinearity) {
    half_kick(u, state.dt);
    if (dealiasing) {
      double r = 0.0;
      u = dealias(u, state.dealias_rule, &r);
      removed += r;
    }
  }

  state.truncated_mass += removed;
  state.step_count += 1;
  state.time = state.step_count * state.dt;

  if (!u.all_finite() || u.max_abs() > 1e6 * std::max(state.initial_max, 1e-300))
    throw BlowupError("step_strang: blow-up detected at t = " +
                          std::to_string(state.time),
                      nullptr);
  return state;
}

Trajectory evolve(const ComplexField& u0, double T, double dt, int stride,
                  const EvolveOptions& opts,
                  const std::vector<Observer>& observers) {
  if (!(T > 0.0) || !(dt > 0.0))
    throw std::invalid_argument("evolve: T and dt must be positive");
  if (stride < 1) throw std::invalid_argument("evolve: stride must be >= 1");
  const double steps_exact = T / dt;
  const long steps = std::lround(steps_exact);
  if (steps < 1 || std::abs(steps * dt - T) > 1e-9 * std::max(1.0, T))
    throw std::invalid_argument("evolve: T/dt must be an integer");

  auto traj = std::make_shared<Trajectory>();
  SimState state;
  state.field = in_rep(u0, Representation::physical);
  state.dt = dt;
  state.dealias_rule = opts.dealias;
  state.nonlinearity = opts.nonlinearity;
  state.initial_max = state.field.max_abs();

  auto record = [&](const SimState& s) {
    if (opts.store_fields) traj->snapshots.push_back({s.time, s.field});
    traj->diagnostics.push_back(make_diagnostics(
        s.field, s.time, opts.imethod_N, opts.imethod_s, opts.weight.get(),
        s.truncated_mass));
    traj->truncated_mass = s.truncated_mass;
    for (const auto& obs : observers) obs(s);
  };

  record(state);
  for (long m = 0; m < steps; ++m) {
    try {
      state = step_strang(std::move(state));
    } catch (BlowupError& e) {
      throw BlowupError(e.what(), traj);
    }
    if (state.step_count % stride == 0 || state.step_count == steps)
      record(state);
  }
  return std::move(*traj);
}

}  // namespace fns
