#pragma once

#include <span>
#include <vector>

#include "alepe/field.hpp"

namespace alepe {

/// Finite-difference weights for the `order`-th derivative at x0 from the
/// nodes xs (Fornberg's recursion).
std::vector<double> fd_weights(double x0, std::span<const double> xs, int order);

/// Second-order accurate d^order/dz^order, order in {1,2,3}: centered in the
/// interior, one-sided near z = 0 and z = 1. Requires nz >= order + 2.
Field3D vertical_derivative(const Field3D& f, int order);

/// Column integral over [0,1] by the trapezoid rule.
Field2D integrate_z(const Field3D& f);

/// Running integral from z = 0 by the cumulative trapezoid rule; level 0 is exactly 0.
Field3D cumulative_integrate_z(const Field3D& f);

/// Trapezoid weights for nz uniform levels on [0,1].
std::vector<double> trapezoid_weights(int nz);

}  // namespace alepe
