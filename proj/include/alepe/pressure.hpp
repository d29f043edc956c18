#pragma once

#include <array>

#include "alepe/ale_map.hpp"
#include "alepe/kinematics.hpp"

namespace alepe {

/// How the z = 1 boundary operator K1 is evaluated.
///   Simplified: no-slip and mass-balance reduced form (production path).
///   Raw:        -Delta_a w at z = 1 straight from the recovered w.
enum class K1Form { Simplified, Raw };

struct PressureSource {
  explicit PressureSource(const Grid& g)
      : Ftilde(g), K{Field2D(g), Field2D(g), Field2D(g), Field2D(g), Field2D(g)} {}

  Field2D Ftilde;
  /// K1..K5; Ftilde is their sum.
  std::array<Field2D, 5> K;
  /// || K1(simplified) - K1(raw) ||_L2, kept as a diagnostic.
  double k1_gap = 0.0;
};

/// Source of the reduced pressure equation:
///   K1 = -Delta_a w |_{z=1}, K2 = Delta_a w |_{z=0},
///   K3 = -int J grad_aH v : grad_aH^T v, K4 = -int (d3 w)^2 / J,
///   K5 = -2 int grad_aH w . d3 v.
/// Each part is 2/3-rule filtered.
PressureSource assemble_source(const VelocityState& v, const AleMaps& maps, const HeightState& height,
                               K1Form form = K1Form::Simplified);

struct PressureField {
  explicit PressureField(const Grid& g) : p(g) {}
  PressureField(Field2D p_, int iterations_, double residual_)
      : p(std::move(p_)), iterations(iterations_), residual(residual_) {}

  Field2D p;
  int iterations = 0;
  /// L2 norm of the last fixed-point update.
  double residual = 0.0;
};

/// Picard iteration for (I - Delta_H) p = Delta_H^2 h + (h - 1) Delta_H p - Ftilde.
/// `iterations` counts updates after the initial guess, so h = 1 takes one.
/// Throws PressureDiverged when max_iters updates do not reach tol.
PressureField solve_pressure(const Field2D& h, const Field2D& Ftilde, double tol, int max_iters);

/// p - Delta_H^2 h, the interface acceleration implied by the plate equation.
Field2D plate_acceleration(const Field2D& p, const Field2D& h);

/// || h_tt + Delta_H^2 h - p ||_L2.
double plate_residual(const PressureField& p, const HeightState& height, const Field2D& h_tt);

}  // namespace alepe
