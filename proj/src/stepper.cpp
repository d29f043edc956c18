#include "alepe/stepper.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "alepe/spectral.hpp"
#include "alepe/vertical.hpp"

namespace alepe {
namespace {

Field2D top(const Field3D& f) { return plane_of(f, f.grid().nz() - 1); }

// Fill in w, h_t, phi_t and p for a state whose v and h were just updated.
void complete_state(SimState& s, const StepConfig& cfg) {
  const Grid& g = s.grid();
  if (cfg.regime == Regime::LinearFlat) {
    s.height = HeightState::flat(g);
    s.maps = AleMaps::identity(g);
    s.v.w = recover_w(s.v, s.maps);
    s.p = PressureField(g);
    return;
  }
  s.maps = build_maps(s.height.h, Field2D(g));
  const double j_min = s.maps.J.min();
  if (j_min <= cfg.collapse_floor) {
    std::ostringstream msg;
    msg << "min J = " << j_min << " at or below floor " << cfg.collapse_floor;
    throw NonInvertibleMap(msg.str(), j_min);
  }
  s.v.w = recover_w(s.v, s.maps);
  s.height.h_t = top(s.v.w);
  set_extension_velocity(s.maps, s.height.h_t);
  const PressureSource src = assemble_source(s.v, s.maps, s.height, cfg.k1_form);
  // The fixed point only contracts for ||h - 1||_inf < 1.
  const double dev = (s.height.h - Field2D(g, 1.0)).max_abs();
  if (!(dev < 1.0))
    throw PressureDiverged("||h - 1||_inf = " + std::to_string(dev) + " outside the Picard range", 0, dev);
  s.p = solve_pressure(s.height.h, src.Ftilde, cfg.picard_tol, cfg.picard_max_iters);
}

// w(., 1) for velocity v on the maps of the previous step.
Field2D interface_velocity(const VelocityState& v, const AleMaps& maps) {
  return -integrate_z(divergence_flux(v, maps));
}

Field3D flat_laplacian(const Field3D& u) { return laplacian_h(u) + vertical_derivative(u, 2); }

}  // namespace

void StepConfig::validate(const Grid& g) const {
  if (!(dt > 0.0)) throw InvalidInput("dt must be positive");
  if (dt > 0.25 * g.dz()) {
    std::ostringstream msg;
    msg << "dt = " << dt << " exceeds 0.25*dz = " << 0.25 * g.dz();
    throw InvalidInput(msg.str());
  }
  if (!(t_end >= 0.0)) throw InvalidInput("t_end must be >= 0");
  if (coupling_sweeps < 1) throw InvalidInput("coupling_sweeps must be >= 1");
  if (output_every < 1) throw InvalidInput("output_every must be >= 1");
  if (!(eps_guard > 0.0 && eps_guard <= 0.5)) throw InvalidInput("eps_guard must lie in (0, 1/2]");
  if (!(picard_tol > 0.0)) throw InvalidInput("picard_tol must be positive");
  if (picard_max_iters < 1) throw InvalidInput("picard_max_iters must be >= 1");
}

SimState prepare_state(const Field3D& v1, const Field3D& v2, const StepConfig& cfg) {
  const Grid& g = v1.grid();
  v1.check_same(v2);
  const double wall = std::max({plane_of(v1, 0).max_abs(), top(v1).max_abs(),
                                plane_of(v2, 0).max_abs(), top(v2).max_abs()});
  if (wall > 1e-12) throw InvalidInput("initial velocity violates no-slip at the walls");
  SimState s(g);
  s.v.v1 = v1;
  s.v.v2 = v2;
  complete_state(s, cfg);
  return s;
}

std::array<Field3D, 2> momentum_rhs(const SimState& s, Regime regime) {
  const Grid& g = s.grid();
  std::array<Field3D, 2> out{Field3D(g), Field3D(g)};
  if (regime == Regime::LinearFlat) return out;
  const auto adv = advect(s.v, s.maps);
  const Field3D grad_p[2] = {extrude(dx(s.p.p)), extrude(dy(s.p.p))};
  for (int alpha = 0; alpha < 2; ++alpha) {
    Field3D gtot = laplacian_correction(s.v.component(alpha), s.maps);
    gtot -= adv[alpha];
    gtot -= grad_p[alpha];
    out[alpha] = dealias(gtot);
  }
  return out;
}

std::array<Field3D, 2> velocity_tendency(const SimState& s, Regime regime) {
  auto out = momentum_rhs(s, regime);
  const int nz = s.grid().nz();
  for (int alpha = 0; alpha < 2; ++alpha) {
    out[alpha] += flat_laplacian(s.v.component(alpha));
    set_plane(out[alpha], 0, Field2D(s.grid()));
    set_plane(out[alpha], nz - 1, Field2D(s.grid()));
  }
  return out;
}

Field3D implicit_solve(const Field3D& rhs, double c) {
  const Grid& g = rhs.grid();
  const int nz = g.nz();
  const int n = nz - 2;
  const double off = -c / (g.dz() * g.dz());
  Spectrum3D s = forward(rhs);
  std::vector<double> cp(n);
  std::vector<Complex> dp(n);
  for (int ikx = 0; ikx < g.nx(); ++ikx) {
    for (int iky = 0; iky < g.nyh(); ++iky) {
      const double k2 = std::pow(g.kx(ikx), 2) + std::pow(g.ky(iky), 2);
      const double diag = 1.0 + c * k2 - 2.0 * off;
      // Thomas sweep over interior levels 1..nz-2.
      cp[0] = off / diag;
      dp[0] = s.at(ikx, iky, 1) / diag;
      for (int i = 1; i < n; ++i) {
        const double m = diag - off * cp[i - 1];
        cp[i] = off / m;
        dp[i] = (s.at(ikx, iky, i + 1) - off * dp[i - 1]) / m;
      }
      s.at(ikx, iky, nz - 2) = dp[n - 1];
      for (int i = n - 2; i >= 0; --i) s.at(ikx, iky, i + 1) = dp[i] - cp[i] * s.at(ikx, iky, i + 2);
      s.at(ikx, iky, 0) = 0.0;
      s.at(ikx, iky, nz - 1) = 0.0;
    }
  }
  Field3D u = inverse(s);
  set_plane(u, 0, Field2D(g));
  set_plane(u, nz - 1, Field2D(g));
  return u;
}

SimState imex_step(const SimState& s, const StepConfig& cfg) {
  const double dt = cfg.dt;
  const auto g0 = momentum_rhs(s, cfg.regime);

  SimState next = s;
  next.t = s.t + dt;
  next.step = s.step + 1;
  for (int alpha = 0; alpha < 2; ++alpha)
    next.v.component(alpha) = implicit_solve(s.v.component(alpha) + dt * g0[alpha], dt);
  next.height.h = s.height.h + dt * interface_velocity(next.v, s.maps);
  complete_state(next, cfg);

  for (int sweep = 1; sweep < cfg.coupling_sweeps; ++sweep) {
    const auto gs = momentum_rhs(next, cfg.regime);
    SimState corr = s;
    corr.t = next.t;
    corr.step = next.step;
    for (int alpha = 0; alpha < 2; ++alpha) {
      const Field3D& u = s.v.component(alpha);
      Field3D rhs = u + (0.5 * dt) * (flat_laplacian(u) + g0[alpha] + gs[alpha]);
      corr.v.component(alpha) = implicit_solve(rhs, 0.5 * dt);
    }
    corr.height.h =
        s.height.h + (0.5 * dt) * (s.height.h_t + interface_velocity(corr.v, next.maps));
    complete_state(corr, cfg);
    next = std::move(corr);
  }
  return next;
}

std::string to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Completed: return "completed";
    case RunStatus::MapCollapse: return "map_collapse";
    case RunStatus::GuardExceeded: return "guard_exceeded";
    case RunStatus::PressureDiverged: return "pressure_diverged";
  }
  return "unknown";
}

RunResult run(const SimState& initial, const StepConfig& cfg, const StateSink& sink) {
  cfg.validate(initial.grid());
  RunResult result{initial, RunStatus::Completed, 0.0, {}};
  if (sink) sink(initial);
  const long steps = std::lround(cfg.t_end / cfg.dt);
  for (long n = 0; n < steps; ++n) {
    const SimState& cur = result.final_state;
    try {
      SimState next = imex_step(cur, cfg);
      if (cfg.regime == Regime::Full && !map_bounds_check(next.maps, cfg.eps_guard).pass) {
        if (sink) sink(next);
        result.status = RunStatus::GuardExceeded;
        result.t_abort = next.t;
        std::ostringstream msg;
        msg << "||J - 1||_inf exceeded " << cfg.eps_guard << " at t = " << next.t;
        result.message = msg.str();
        return result;
      }
      result.final_state = std::move(next);
    } catch (const NonInvertibleMap& e) {
      result.status = RunStatus::MapCollapse;
      result.t_abort = cur.t + cfg.dt;
      result.message = e.what();
      return result;
    } catch (const PressureDiverged& e) {
      result.status = RunStatus::PressureDiverged;
      result.t_abort = cur.t + cfg.dt;
      result.message = e.what();
      return result;
    }
    if (sink) sink(result.final_state);
  }
  result.t_abort = result.final_state.t;
  return result;
}

}  // namespace alepe
