#pragma once

#include <array>
#include <functional>
#include <string>

#include "alepe/ale_map.hpp"
#include "alepe/kinematics.hpp"
#include "alepe/pressure.hpp"

namespace alepe {

/// Full: the coupled ALE system.
/// LinearFlat: advection dropped, h frozen at 1, p = 0; what remains is the
/// heat equation with no-slip walls.
enum class Regime { Full, LinearFlat };

struct StepConfig {
  double dt = 1e-3;
  double t_end = 0.1;
  double picard_tol = 1e-12;
  int picard_max_iters = 50;
  /// 1: IMEX Euler. >= 2: Euler predictor followed by (sweeps - 1)
  /// Crank-Nicolson / trapezoidal corrector passes.
  int coupling_sweeps = 1;
  int output_every = 1;
  /// ||J - 1||_inf bound; the run stops at its first violation.
  double eps_guard = 0.5;
  /// The map counts as collapsed once min J <= this floor.
  double collapse_floor = 0.1;
  Regime regime = Regime::Full;
  K1Form k1_form = K1Form::Simplified;

  /// Throws InvalidInput on dt <= 0, dt > dz/4, sweeps < 1 and eps outside (0, 1/2].
  void validate(const Grid& g) const;
};

struct SimState {
  explicit SimState(const Grid& g)
      : v(g), height(HeightState::flat(g)), p(g), maps(AleMaps::identity(g)) {}

  double t = 0.0;
  long step = 0;
  VelocityState v;
  HeightState height;
  PressureField p;
  AleMaps maps;

  const Grid& grid() const noexcept { return v.grid(); }
};

/// State at t = 0 from (v1, v2): h = 1, w recovered, h_t = w(., 1) and the
/// pressure solved once. v1 and v2 must vanish at z = 0 and z = 1.
SimState prepare_state(const Field3D& v1, const Field3D& v2, const StepConfig& cfg);

/// Explicit tendency G with dv/dt = Delta_H v + d33 v + G:
/// variable-coefficient Laplacian corrections, minus advection, minus grad p.
/// 2/3-rule filtered.
std::array<Field3D, 2> momentum_rhs(const SimState& s, Regime regime = Regime::Full);

/// dv/dt at the current state, Delta_H v + d33 v + G (zero on the walls).
std::array<Field3D, 2> velocity_tendency(const SimState& s, Regime regime = Regime::Full);

/// Per horizontal mode, solve (1 - c Delta_H - c D2) u = rhs on interior
/// levels with u = 0 at z = 0 and z = 1 (D2: centered 3-point).
Field3D implicit_solve(const Field3D& rhs, double c);

/// One time step. Throws NonInvertibleMap (min J <= collapse floor) or
/// PressureDiverged; the input state is untouched either way.
SimState imex_step(const SimState& s, const StepConfig& cfg);

enum class RunStatus { Completed, MapCollapse, GuardExceeded, PressureDiverged };

std::string to_string(RunStatus s);

struct RunResult {
  SimState final_state;
  RunStatus status = RunStatus::Completed;
  /// Time of the failed or guard-violating step; final_state.t on completion.
  double t_abort = 0.0;
  std::string message;
};

/// Called with every accepted state, including the initial one.
using StateSink = std::function<void(const SimState&)>;

/// Steps until t_end or the first failure. On GuardExceeded the offending
/// state is reported to the sink and final_state is the last state inside the guard.
RunResult run(const SimState& initial, const StepConfig& cfg, const StateSink& sink = {});

}  // namespace alepe
