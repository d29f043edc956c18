#include "alepe/pressure.hpp"

#include <cmath>
#include <string>

#include "alepe/norms.hpp"
#include "alepe/spectral.hpp"
#include "alepe/vertical.hpp"

namespace alepe {
namespace {

Field2D top(const Field3D& f) { return plane_of(f, f.grid().nz() - 1); }

// K1 at z = 1 after using v = 0 there and d3 w = -S, S = b31 d3 v1 + b32 d3 v2.
Field2D k1_simplified(const VelocityState& v, const AleMaps& maps, const HeightState& height) {
  const Field3D S = maps.b(2, 0) * vertical_derivative(v.v1, 1) +
                    maps.b(2, 1) * vertical_derivative(v.v2, 1);
  const Field2D s = top(S);
  const Field2D s3 = top(vertical_derivative(S, 1));

  const Field2D a31 = top(maps.a(2, 0));
  const Field2D a32 = top(maps.a(2, 1));
  const Field2D a33 = top(maps.a(2, 2));
  // sum_ij a_ji d_j a_3i = d1 a31 + d2 a32 + sum_i a_3i d3 a_3i.
  Field2D coef = top(maps.grad_a3(0)[0]) + top(maps.grad_a3(1)[1]);
  for (int i = 0; i < 3; ++i) coef += top(maps.a(2, i)) * top(maps.grad_a3(i)[2]);

  Field2D out = -laplacian_h(height.h_t);
  out += coef * s;
  out += 2.0 * (a31 * dx(s) + a32 * dy(s));
  out += (a31 * a31 + a32 * a32 + a33 * a33) * s3;
  return out;
}

}  // namespace

PressureSource assemble_source(const VelocityState& v, const AleMaps& maps, const HeightState& height,
                               K1Form form) {
  const Grid& g = v.grid();
  PressureSource src(g);

  const Field3D lap_w = variable_laplacian(v.w, maps);
  const Field2D k1_raw = -top(lap_w);
  const Field2D k1_simple = k1_simplified(v, maps, height);
  src.k1_gap = l2_norm(k1_simple - k1_raw);
  src.K[0] = form == K1Form::Simplified ? k1_simple : k1_raw;
  src.K[1] = plane_of(lap_w, 0);

  const auto g1 = grad_aH(v.v1, maps);
  const auto g2 = grad_aH(v.v2, maps);
  src.K[2] = -integrate_z(maps.J * (g1[0] * g1[0] + 2.0 * g1[1] * g2[0] + g2[1] * g2[1]));

  const Field3D q = divergence_flux(v, maps);
  Field3D inv_j = maps.J.map([](double j) { return 1.0 / j; });
  src.K[3] = -integrate_z(q * q * inv_j);

  const auto gw = grad_aH(v.w, maps);
  src.K[4] = -2.0 * integrate_z(gw[0] * vertical_derivative(v.v1, 1) +
                                gw[1] * vertical_derivative(v.v2, 1));

  for (auto& k : src.K) {
    k = dealias(k);
    src.Ftilde += k;
  }
  return src;
}

PressureField solve_pressure(const Field2D& h, const Field2D& Ftilde, double tol, int max_iters) {
  const Grid& g = h.grid();
  if (!(tol > 0.0)) throw InvalidInput("pressure tolerance must be positive");
  if (max_iters < 1) throw InvalidInput("pressure iteration budget must be at least 1");
  Field2D dev = h;
  dev += -1.0;
  if (!(dev.max_abs() < 1.0))
    throw InvalidInput("pressure solve needs ||h - 1||_inf < 1, got " + std::to_string(dev.max_abs()));

  const Spectrum2D rhs0 = [&] {
    Spectrum2D s = apply(forward(h), Multiplier::bilaplacian());
    const Spectrum2D f = forward(Ftilde);
    for (std::size_t i = 0; i < s.values().size(); ++i) s.values()[i] -= f.values()[i];
    return s;
  }();

  auto invert = [&](Spectrum2D s) {
    for (int ikx = 0; ikx < g.nx(); ++ikx)
      for (int iky = 0; iky < g.nyh(); ++iky) {
        const double k2 = std::pow(g.kx(ikx), 2) + std::pow(g.ky(iky), 2);
        s.at(ikx, iky) /= 1.0 + k2;
      }
    return inverse(s);
  };

  Field2D p = invert(rhs0);
  double residual = 0.0;
  for (int m = 1; m <= max_iters; ++m) {
    Spectrum2D coupling = forward(dev * laplacian_h(p));
    truncate(coupling);
    coupling += rhs0;
    Field2D next = invert(coupling);
    residual = l2_norm(next - p);
    p = std::move(next);
    if (residual <= tol) return {std::move(p), m, residual};
    if (!std::isfinite(residual)) break;
  }
  throw PressureDiverged("pressure fixed point did not reach tol " + std::to_string(tol) + " in " +
                             std::to_string(max_iters) + " sweeps (residual " +
                             std::to_string(residual) + ")",
                         max_iters, residual);
}

Field2D plate_acceleration(const Field2D& p, const Field2D& h) {
  return p - apply(h, Multiplier::bilaplacian());
}

double plate_residual(const PressureField& p, const HeightState& height, const Field2D& h_tt) {
  return l2_norm(h_tt - plate_acceleration(p.p, height.h));
}

}  // namespace alepe
