#pragma once

#include <initializer_list>

#include "alepe/field.hpp"

namespace alepe {

enum class Lp { L2, L4, LInf };
enum class Axis { Vertical, Horizontal };

/// What to differentiate and how to reduce. Derivatives are applied first
/// (vertical finite differences, then the horizontal multiplier |k|^beta or
/// (1+|k|^2)^(beta/2)); the result is reduced along `inner_axis` with
/// exponent `inner`, then along the other axis with exponent `outer`.
/// Measure is dx1 dx2 dz on T^2 x [0,1], so the horizontal area (2pi)^2 is included.
struct NormSpec {
  int vertical_order = 0;
  double horizontal_order = 0.0;
  bool bessel = false;
  Lp inner = Lp::L2;
  Lp outer = Lp::L2;
  Axis inner_axis = Axis::Vertical;
};

double norm(const Field3D& f, const NormSpec& spec = {});
/// Plane version: only horizontal_order, bessel and `outer` are used.
double norm(const Field2D& f, const NormSpec& spec = {});

/// Parseval L2 norm, (2pi)^2 * sum |c_k|^2 integrated in z by trapezoid.
double l2_norm(const Field3D& f);
double l2_norm(const Field2D& f);
/// Physical-space L2 norm by rectangle rule in x and trapezoid in z.
double l2_norm_physical(const Field3D& f);
double l2_norm_physical(const Field2D& f);

/// || (1+|k|^2)^(s/2) h ||_{L2(T^2)}.
double sobolev_norm(const Field2D& h, double s);
/// Slab norm with sum_{j <= floor(r)} || (1+|k|^2)^((r-j)/2) d_z^j f ||^2.
double sobolev_norm(const Field3D& f, double r);

/// Full horizontal Hessian (d11, d12, d21, d22) reduced in L2; symbol |k|^4 after squaring.
double hessian_h_norm(const Field3D& f);
/// Horizontal gradient (d1, d2) reduced in L2.
double gradient_h_norm(const Field3D& f);

/// Integral over T^2 x [0,1]: rectangle rule in x, trapezoid in z.
double integrate(const Field3D& f);
/// Integral over T^2.
double integrate(const Field2D& f);

/// sqrt(sum x_i^2).
double hypot_all(std::initializer_list<double> xs);

}  // namespace alepe
