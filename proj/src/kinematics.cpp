#include "alepe/kinematics.hpp"

#include "alepe/spectral.hpp"
#include "alepe/vertical.hpp"

namespace alepe {

Field3D div_aH(const VelocityState& v, const AleMaps& maps) {
  return dx(v.v1) + dy(v.v2) + maps.a(2, 0) * vertical_derivative(v.v1, 1) +
         maps.a(2, 1) * vertical_derivative(v.v2, 1);
}

Field3D divergence_flux(const VelocityState& v, const AleMaps& maps) {
  return maps.b(0, 0) * dx(v.v1) + maps.b(1, 1) * dy(v.v2) +
         maps.b(2, 0) * vertical_derivative(v.v1, 1) + maps.b(2, 1) * vertical_derivative(v.v2, 1);
}

Field3D recover_w(const VelocityState& v, const AleMaps& maps) {
  return -cumulative_integrate_z(divergence_flux(v, maps));
}

double divergence_residual(const VelocityState& v, const AleMaps& maps) {
  return (vertical_derivative(v.w, 1) + divergence_flux(v, maps)).max_abs();
}

std::array<Field3D, 2> grad_aH(const Field3D& s, const AleMaps& maps) {
  const Field3D ds = vertical_derivative(s, 1);
  return {dx(s) + maps.a(2, 0) * ds, dy(s) + maps.a(2, 1) * ds};
}

Field3D laplacian_correction(const Field3D& u, const AleMaps& maps) {
  const Grid& g = u.grid();
  const Field3D du = vertical_derivative(u, 1);
  const Field3D ddu = vertical_derivative(u, 2);
  const Field3D& a31 = maps.a(2, 0);
  const Field3D& a32 = maps.a(2, 1);
  const Field3D& a33 = maps.a(2, 2);

  // sum_l a_3l d3 a_3l, with d3 a_3l from the chain rule on phi.
  Field3D chain(g);
  for (int l = 0; l < 3; ++l) chain += maps.a(2, l) * maps.grad_a3(l)[2];

  Field3D out = (a31 * a31 + a32 * a32 + a33 * a33 - Field3D(g, 1.0)) * ddu;
  out += chain * du;
  out += dx(dealias(a31 * du)) + dy(dealias(a32 * du));
  out += a31 * dx(du) + a32 * dy(du);
  return out;
}

Field3D variable_laplacian(const Field3D& u, const AleMaps& maps) {
  return laplacian_h(u) + vertical_derivative(u, 2) + laplacian_correction(u, maps);
}

std::array<Field3D, 2> advect(const VelocityState& v, const AleMaps& maps) {
  // v . grad_aH + a33 (w - phi_t) d3, written as v1 d1 + v2 d2 + c d3.
  const Field3D c = v.v1 * maps.a(2, 0) + v.v2 * maps.a(2, 1) + maps.a(2, 2) * (v.w - maps.phi_t);
  std::array<Field3D, 2> out{Field3D(v.grid()), Field3D(v.grid())};
  for (int alpha = 0; alpha < 2; ++alpha) {
    const Field3D& u = v.component(alpha);
    out[alpha] = v.v1 * dx(u) + v.v2 * dy(u) + c * vertical_derivative(u, 1);
  }
  return out;
}

}  // namespace alepe
