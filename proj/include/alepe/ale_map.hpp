#pragma once

#include <array>

#include "alepe/field.hpp"

namespace alepe {

/// Interface height h (reference value 1) and its velocity h_t.
struct HeightState {
  Field2D h;
  Field2D h_t;

  /// Flat interface at rest, h = 1 and h_t = 0.
  static HeightState flat(const Grid& g);
};

/// 3x3 matrix of volume fields, row-major.
class MatrixField {
 public:
  explicit MatrixField(const Grid& g);
  Field3D& operator()(int row, int col) { return m_[3 * row + col]; }
  const Field3D& operator()(int row, int col) const { return m_[3 * row + col]; }

 private:
  std::array<Field3D, 9> m_;
};

/// Harmonic ALE map x3 -> phi(x, x3) and its coefficient fields.
/// Indices below are 1-based in the comments and 0-based in code.
///   a = (grad eta)^{-1}: rows (1,0,0), (0,1,0), (-d1 phi/J, -d2 phi/J, 1/J)
///   b = J a:            rows (J,0,0), (0,J,0), (-d1 phi, -d2 phi, 1)
/// All phi derivatives come from the closed-form per-mode profiles.
struct AleMaps {
  explicit AleMaps(const Grid& g);

  Field3D phi;
  Field3D phi_t;
  Field3D J;  // d3 phi
  /// d1 phi, d2 phi.
  std::array<Field3D, 2> dphi;
  /// Second derivatives of phi: d11, d12, d22, d13, d23, d33.
  Field3D phi11, phi12, phi22, phi13, phi23, phi33;
  MatrixField a;
  MatrixField b;

  const Grid& grid() const noexcept { return phi.grid(); }

  /// (d1 a_{3i}, d2 a_{3i}, d3 a_{3i}) for i in {0,1,2}, by the chain rule on phi.
  std::array<Field3D, 3> grad_a3(int i) const;

  /// Identity map phi = z on g.
  static AleMaps identity(const Grid& g);
};

/// Harmonic extension of h into the slab: per mode k != 0,
/// hat phi_k(z) = hat h_k sinh(|k| z)/sinh(|k|); mode 0 is hat h_0 z.
Field3D harmonic_extension(const Field2D& h);

/// Same kernel applied to h_t.
Field3D extension_time_derivative(const Field2D& h_t);

/// d3 of the harmonic extension of g, from the closed-form profiles.
/// Applied to h_t this is J_t.
Field3D extension_dz(const Field2D& g);

/// Build all coefficient fields from the interface height and velocity.
/// Throws NonInvertibleMap when min J <= 0.
AleMaps build_maps(const Field2D& h, const Field2D& h_t);

/// Build from extension fields. phi must be a harmonic extension; the
/// per-mode profiles are re-derived from its trace at z = 1.
AleMaps build_maps(const Field3D& phi, const Field3D& phi_t);

/// Replace phi_t after the interface velocity has been recovered.
void set_extension_velocity(AleMaps& maps, const Field2D& h_t);

struct NormalField {
  std::array<Field2D, 3> raw;   // (-d1 h, -d2 h, 1)
  std::array<Field2D, 3> unit;  // raw / sqrt(|grad h|^2 + 1)
};

NormalField normal_vector(const Field2D& h);

struct MapBounds {
  double j_dev = 0.0;  // ||J - 1||_inf
  double a_dev = 0.0;  // max_ij ||a_ij - delta_ij||_inf
  double b_dev = 0.0;
  double j_min = 1.0;
  double j_max = 1.0;
  bool pass = true;
};

/// pass iff ||J - 1||_inf <= eps, eps in (0, 1/2].
MapBounds map_bounds_check(const AleMaps& maps, double eps);

/// max_l || sum_k d_k b_{kl} ||_inf with spectral horizontal and analytic vertical derivatives.
double piola_residual(const AleMaps& maps);

/// max_ij || (a grad eta)_ij - delta_ij ||_inf.
double inverse_consistency_residual(const AleMaps& maps);

}  // namespace alepe
