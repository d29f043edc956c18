#include "alepe/norms.hpp"

#include <algorithm>
#include <cmath>

#include "alepe/spectral.hpp"
#include "alepe/vertical.hpp"

namespace alepe {
namespace {

// Weight of a stored half-plane coefficient in the full-plane sum.
double half_plane_weight(const Grid& g, int iky) {
  return (iky == 0 || 2 * iky == g.ny()) ? 1.0 : 2.0;
}

template <class Tag>
double parseval_level(const Spectrum<Tag>& s, int iz) {
  const Grid& g = s.grid();
  double sum = 0.0;
  for (int ikx = 0; ikx < g.nx(); ++ikx)
    for (int iky = 0; iky < g.nyh(); ++iky)
      sum += half_plane_weight(g, iky) * std::norm(s.at(ikx, iky, iz));
  return Grid::area() * sum;
}

template <class Tag>
Field<Tag> horizontal_part(const Field<Tag>& f, const NormSpec& spec) {
  if (spec.horizontal_order == 0.0 && !spec.bessel) return f;
  const Multiplier m = spec.bessel ? Multiplier::bessel(spec.horizontal_order)
                                   : Multiplier::abs_power(spec.horizontal_order);
  return apply(f, m);
}

// Reduction of a plane of values (one z level) with the horizontal measure.
double reduce_h(std::span<const double> v, Lp p) {
  const double cell = Grid::area() / static_cast<double>(v.size());
  switch (p) {
    case Lp::LInf: {
      double m = 0.0;
      for (double x : v) m = std::max(m, std::abs(x));
      return m;
    }
    case Lp::L2: {
      double s = 0.0;
      for (double x : v) s += x * x;
      return std::sqrt(s * cell);
    }
    case Lp::L4: {
      double s = 0.0;
      for (double x : v) s += x * x * x * x;
      return std::pow(s * cell, 0.25);
    }
  }
  return 0.0;
}

// Reduction of a column of values with trapezoid weights.
double reduce_z(std::span<const double> v, const std::vector<double>& w, Lp p) {
  switch (p) {
    case Lp::LInf: {
      double m = 0.0;
      for (double x : v) m = std::max(m, std::abs(x));
      return m;
    }
    case Lp::L2: {
      double s = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) s += w[i] * v[i] * v[i];
      return std::sqrt(s);
    }
    case Lp::L4: {
      double s = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) s += w[i] * std::pow(v[i], 4);
      return std::pow(s, 0.25);
    }
  }
  return 0.0;
}

}  // namespace

double l2_norm(const Field3D& f) {
  const auto s = forward(f);
  const auto w = trapezoid_weights(f.grid().nz());
  double sum = 0.0;
  for (int iz = 0; iz < f.levels(); ++iz) sum += w[iz] * parseval_level(s, iz);
  return std::sqrt(sum);
}

double l2_norm(const Field2D& f) { return std::sqrt(parseval_level(forward(f), 0)); }

double l2_norm_physical(const Field3D& f) {
  const Grid& g = f.grid();
  const auto w = trapezoid_weights(g.nz());
  double sum = 0.0;
  for (int iz = 0; iz < g.nz(); ++iz) {
    double s = 0.0;
    for (double x : f.level(iz)) s += x * x;
    sum += w[iz] * s;
  }
  return std::sqrt(sum * Grid::area() / static_cast<double>(g.plane_size()));
}

double l2_norm_physical(const Field2D& f) { return reduce_h(f.level(0), Lp::L2); }

double norm(const Field3D& f, const NormSpec& spec) {
  if (spec.vertical_order < 0 || spec.vertical_order > 3)
    throw InvalidInput("vertical order must be in {0,1,2,3}");
  if (spec.horizontal_order < 0.0) throw InvalidInput("horizontal order must be >= 0");
  if (!f.all_finite()) throw InvalidInput("norm of a non-finite field");

  Field3D d = spec.vertical_order > 0 ? vertical_derivative(f, spec.vertical_order) : f;
  d = horizontal_part(d, spec);

  if (spec.inner == Lp::L2 && spec.outer == Lp::L2) return l2_norm(d);

  const Grid& g = f.grid();
  const auto w = trapezoid_weights(g.nz());
  if (spec.inner_axis == Axis::Vertical) {
    Field2D inner(g);
    std::vector<double> column(g.nz());
    for (std::size_t p = 0; p < g.plane_size(); ++p) {
      for (int iz = 0; iz < g.nz(); ++iz) column[iz] = d.level(iz)[p];
      inner.values()[p] = reduce_z(column, w, spec.inner);
    }
    return reduce_h(inner.level(0), spec.outer);
  }
  std::vector<double> per_level(g.nz());
  for (int iz = 0; iz < g.nz(); ++iz) per_level[iz] = reduce_h(d.level(iz), spec.inner);
  return reduce_z(per_level, w, spec.outer);
}

double norm(const Field2D& f, const NormSpec& spec) {
  if (spec.horizontal_order < 0.0) throw InvalidInput("horizontal order must be >= 0");
  if (!f.all_finite()) throw InvalidInput("norm of a non-finite field");
  const Field2D d = horizontal_part(f, spec);
  if (spec.outer == Lp::L2) return l2_norm(d);
  return reduce_h(d.level(0), spec.outer);
}

double sobolev_norm(const Field2D& h, double s) {
  return std::sqrt(parseval_level(apply(forward(h), Multiplier::bessel(s)), 0));
}

double sobolev_norm(const Field3D& f, double r) {
  if (r < 0.0) throw InvalidInput("Sobolev order must be >= 0");
  double sum = 0.0;
  Field3D dj = f;
  for (int j = 0; j <= static_cast<int>(std::floor(r)); ++j) {
    if (j > 0) dj = vertical_derivative(f, j);
    const double n = l2_norm(apply(dj, Multiplier::bessel(r - j)));
    sum += n * n;
  }
  return std::sqrt(sum);
}

double hessian_h_norm(const Field3D& f) { return l2_norm(apply(f, Multiplier::abs_power(2.0))); }

double gradient_h_norm(const Field3D& f) { return l2_norm(apply(f, Multiplier::abs_power(1.0))); }

double integrate(const Field3D& f) {
  const Field2D column = integrate_z(f);
  double s = 0.0;
  for (double x : column.values()) s += x;
  return s * Grid::area() / static_cast<double>(f.grid().plane_size());
}

double integrate(const Field2D& f) {
  double s = 0.0;
  for (double x : f.values()) s += x;
  return s * Grid::area() / static_cast<double>(f.grid().plane_size());
}

double hypot_all(std::initializer_list<double> xs) {
  double s = 0.0;
  for (double x : xs) s += x * x;
  return std::sqrt(s);
}

}  // namespace alepe
