#include "alepe/vertical.hpp"

#include <algorithm>
#include <string>

namespace alepe {

std::vector<double> fd_weights(double x0, std::span<const double> xs, int order) {
  const int n = static_cast<int>(xs.size());
  // c[j][k]: weight of node j for the k-th derivative.
  std::vector<std::vector<double>> c(n, std::vector<double>(order + 1, 0.0));
  double c1 = 1.0;
  double c4 = xs[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = xs[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = xs[i] - xs[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int j = 0; j < n; ++j) w[j] = c[j][order];
  return w;
}

namespace {

struct Stencil {
  int first;
  std::vector<double> weights;
};

// Centered stencils use 3 nodes for orders 1-2 and 5 for order 3; one-sided
// stencils use order + 2 nodes, which keeps every row second-order accurate.
std::vector<Stencil> build_stencils(int nz, int order) {
  const double dz = 1.0 / (nz - 1);
  const int half = order == 3 ? 2 : 1;
  const int one_sided = order + 2;
  std::vector<Stencil> rows(nz);
  for (int i = 0; i < nz; ++i) {
    int first;
    int count;
    if (i - half >= 0 && i + half <= nz - 1) {
      first = i - half;
      count = 2 * half + 1;
    } else {
      count = one_sided;
      first = std::clamp(i - count / 2, 0, nz - count);
    }
    std::vector<double> xs(count);
    for (int j = 0; j < count; ++j) xs[j] = (first + j) * dz;
    rows[i] = {first, fd_weights(i * dz, xs, order)};
  }
  return rows;
}

}  // namespace

Field3D vertical_derivative(const Field3D& f, int order) {
  const Grid& g = f.grid();
  if (order < 1 || order > 3) throw InvalidInput("vertical derivative order must be 1, 2 or 3");
  if (g.nz() < order + 2)
    throw InvalidInput("nz = " + std::to_string(g.nz()) + " too small for order " +
                       std::to_string(order));
  const auto rows = build_stencils(g.nz(), order);
  Field3D out(g);
  const std::size_t plane = g.plane_size();
  for (int iz = 0; iz < g.nz(); ++iz) {
    auto dst = out.level(iz);
    const auto& row = rows[iz];
    for (std::size_t j = 0; j < row.weights.size(); ++j) {
      const double w = row.weights[j];
      auto src = f.level(row.first + static_cast<int>(j));
      for (std::size_t p = 0; p < plane; ++p) dst[p] += w * src[p];
    }
  }
  return out;
}

std::vector<double> trapezoid_weights(int nz) {
  const double dz = 1.0 / (nz - 1);
  std::vector<double> w(nz, dz);
  w.front() = w.back() = 0.5 * dz;
  return w;
}

Field2D integrate_z(const Field3D& f) {
  const Grid& g = f.grid();
  const auto w = trapezoid_weights(g.nz());
  Field2D out(g);
  auto& dst = out.values();
  for (int iz = 0; iz < g.nz(); ++iz) {
    auto src = f.level(iz);
    for (std::size_t p = 0; p < dst.size(); ++p) dst[p] += w[iz] * src[p];
  }
  return out;
}

Field3D cumulative_integrate_z(const Field3D& f) {
  const Grid& g = f.grid();
  const double half_dz = 0.5 * g.dz();
  Field3D out(g);
  for (int iz = 1; iz < g.nz(); ++iz) {
    auto prev = out.level(iz - 1);
    auto dst = out.level(iz);
    auto a = f.level(iz - 1);
    auto b = f.level(iz);
    for (std::size_t p = 0; p < dst.size(); ++p) dst[p] = prev[p] + half_dz * (a[p] + b[p]);
  }
  return out;
}

}  // namespace alepe
