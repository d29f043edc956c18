#include "alepe/field.hpp"

#include <algorithm>
#include <string>

namespace alepe {
namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

Grid::Grid(int nx, int ny, int nz) : nx_(nx), ny_(ny), nz_(nz) {
  if (!power_of_two(nx) || nx < 8 || !power_of_two(ny) || ny < 8)
    throw InvalidInput("nx and ny must be powers of two >= 8 (got " + std::to_string(nx) + ", " +
                       std::to_string(ny) + ")");
  if (nz < 9 || nz % 2 == 0)
    throw InvalidInput("nz must be odd and >= 9 (got " + std::to_string(nz) + ")");
}

Field2D sample(const Grid& g, const std::function<double(double, double)>& f) {
  Field2D out(g);
  for (int ix = 0; ix < g.nx(); ++ix)
    for (int iy = 0; iy < g.ny(); ++iy) out(ix, iy) = f(g.x(ix), g.y(iy));
  return out;
}

Field3D sample(const Grid& g, const std::function<double(double, double, double)>& f) {
  Field3D out(g);
  for (int iz = 0; iz < g.nz(); ++iz)
    for (int ix = 0; ix < g.nx(); ++ix)
      for (int iy = 0; iy < g.ny(); ++iy) out(ix, iy, iz) = f(g.x(ix), g.y(iy), g.z(iz));
  return out;
}

Field2D plane_of(const Field3D& f, int iz) {
  Field2D out(f.grid());
  auto src = f.level(iz);
  std::copy(src.begin(), src.end(), out.values().begin());
  return out;
}

Field3D extrude(const Field2D& f) {
  Field3D out(f.grid());
  for (int iz = 0; iz < out.levels(); ++iz) {
    auto dst = out.level(iz);
    std::copy(f.values().begin(), f.values().end(), dst.begin());
  }
  return out;
}

void set_plane(Field3D& f, int iz, const Field2D& p) {
  if (!(p.grid() == f.grid())) throw InvalidInput("plane and volume fields live on different grids");
  auto dst = f.level(iz);
  std::copy(p.values().begin(), p.values().end(), dst.begin());
}

}  // namespace alepe
