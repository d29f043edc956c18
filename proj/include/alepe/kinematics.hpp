#pragma once

#include <array>

#include "alepe/ale_map.hpp"
#include "alepe/field.hpp"

namespace alepe {

/// Horizontal velocity (v1, v2) and the vertical velocity w recovered from them.
struct VelocityState {
  explicit VelocityState(const Grid& g) : v1(g), v2(g), w(g) {}
  VelocityState(Field3D v1_, Field3D v2_, Field3D w_)
      : v1(std::move(v1_)), v2(std::move(v2_)), w(std::move(w_)) {}

  Field3D v1;
  Field3D v2;
  Field3D w;

  const Grid& grid() const noexcept { return v1.grid(); }
  const Field3D& component(int alpha) const { return alpha == 0 ? v1 : v2; }
  Field3D& component(int alpha) { return alpha == 0 ? v1 : v2; }
};

/// d1 v1 + d2 v2 + a31 d3 v1 + a32 d3 v2.
Field3D div_aH(const VelocityState& v, const AleMaps& maps);

/// J div_aH v = b11 d1 v1 + b22 d2 v2 + b31 d3 v1 + b32 d3 v2.
Field3D divergence_flux(const VelocityState& v, const AleMaps& maps);

/// Mass balance d3 w = -J div_aH v integrated upward from w(., 0) = 0 by the
/// cumulative trapezoid rule.
Field3D recover_w(const VelocityState& v, const AleMaps& maps);

/// || d3 w + J div_aH v ||_inf with w taken from v.w and d3 by finite differences.
double divergence_residual(const VelocityState& v, const AleMaps& maps);

/// (d1 s + a31 d3 s, d2 s + a32 d3 s).
std::array<Field3D, 2> grad_aH(const Field3D& s, const AleMaps& maps);

/// Delta_a u minus the constant-coefficient part Delta_H u + d33 u.
/// Vanishes identically on the flat map.
Field3D laplacian_correction(const Field3D& u, const AleMaps& maps);

/// Delta_H u + a_kl d_k(a_3l d3 u) + a_3i d3 d_i u.
Field3D variable_laplacian(const Field3D& u, const AleMaps& maps);

/// v_g d_g v_a + v_g a_3g d3 v_a + a33 (w - phi_t) d3 v_a for a = 1, 2.
std::array<Field3D, 2> advect(const VelocityState& v, const AleMaps& maps);

}  // namespace alepe
