#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "alepe/errors.hpp"
#include "alepe/grid.hpp"

namespace alepe {

struct PlaneTag {};
struct VolumeTag {};

using Complex = std::complex<double>;

template <class Tag>
constexpr bool is_volume_v = std::is_same_v<Tag, VolumeTag>;

/// Real grid values. Storage is level-major, then ix, then iy:
/// index = (iz * nx + ix) * ny + iy. A plane field has a single level.
template <class Tag>
class Field {
 public:
  explicit Field(const Grid& grid, double fill = 0.0)
      : grid_(grid), data_(grid.plane_size() * levels_for(grid), fill) {}

  Field(const Grid& grid, std::vector<double> values) : grid_(grid), data_(std::move(values)) {
    if (data_.size() != grid.plane_size() * levels_for(grid)) {
      throw InvalidInput("field size " + std::to_string(data_.size()) + " does not match grid (" +
                         std::to_string(grid.plane_size() * levels_for(grid)) + " expected)");
    }
  }

  static int levels_for(const Grid& g) noexcept { return is_volume_v<Tag> ? g.nz() : 1; }

  const Grid& grid() const noexcept { return grid_; }
  int levels() const noexcept { return levels_for(grid_); }
  std::size_t size() const noexcept { return data_.size(); }

  double& operator()(int ix, int iy, int iz)
    requires is_volume_v<Tag>
  {
    return data_[index(ix, iy, iz)];
  }
  double operator()(int ix, int iy, int iz) const
    requires is_volume_v<Tag>
  {
    return data_[index(ix, iy, iz)];
  }
  double& operator()(int ix, int iy)
    requires(!is_volume_v<Tag>)
  {
    return data_[index(ix, iy, 0)];
  }
  double operator()(int ix, int iy) const
    requires(!is_volume_v<Tag>)
  {
    return data_[index(ix, iy, 0)];
  }

  std::size_t index(int ix, int iy, int iz) const noexcept {
    return (static_cast<std::size_t>(iz) * grid_.nx() + ix) * grid_.ny() + iy;
  }

  std::span<double> level(int iz) noexcept {
    return {data_.data() + static_cast<std::size_t>(iz) * grid_.plane_size(), grid_.plane_size()};
  }
  std::span<const double> level(int iz) const noexcept {
    return {data_.data() + static_cast<std::size_t>(iz) * grid_.plane_size(), grid_.plane_size()};
  }

  std::vector<double>& values() noexcept { return data_; }
  const std::vector<double>& values() const noexcept { return data_; }

  Field& operator+=(const Field& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Field& operator-=(const Field& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  /// Pointwise product.
  Field& operator*=(const Field& o) {
    check_same(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] *= o.data_[i];
    return *this;
  }
  Field& operator*=(double s) noexcept {
    for (auto& x : data_) x *= s;
    return *this;
  }
  Field& operator+=(double s) noexcept {
    for (auto& x : data_) x += s;
    return *this;
  }

  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator*(Field a, const Field& b) { return a *= b; }
  friend Field operator*(Field a, double s) { return a *= s; }
  friend Field operator*(double s, Field a) { return a *= s; }
  friend Field operator-(Field a) { return a *= -1.0; }

  /// Pointwise map.
  template <class F>
  Field map(F&& f) const {
    Field out(*this);
    for (auto& x : out.data_) x = f(x);
    return out;
  }

  double max_abs() const noexcept {
    double m = 0.0;
    for (double x : data_) m = std::max(m, std::abs(x));
    return m;
  }
  double min() const noexcept { return *std::min_element(data_.begin(), data_.end()); }
  double max() const noexcept { return *std::max_element(data_.begin(), data_.end()); }
  bool all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](double x) { return std::isfinite(x); });
  }

  void check_same(const Field& o) const {
    if (!(o.grid_ == grid_)) throw InvalidInput("fields live on different grids");
  }

 private:
  Grid grid_;
  std::vector<double> data_;
};

using Field2D = Field<PlaneTag>;
using Field3D = Field<VolumeTag>;

/// Fourier coefficients of a real field in half-complex layout:
/// index = (iz * nx + ikx) * (ny/2+1) + iky. Modes with ky < 0 are implied by
/// Hermitian symmetry c(-k) = conj(c(k)).
template <class Tag>
class Spectrum {
 public:
  explicit Spectrum(const Grid& grid)
      : grid_(grid), data_(grid.spectral_plane_size() * Field<Tag>::levels_for(grid)) {}

  const Grid& grid() const noexcept { return grid_; }
  int levels() const noexcept { return Field<Tag>::levels_for(grid_); }

  std::size_t index(int ikx, int iky, int iz) const noexcept {
    return (static_cast<std::size_t>(iz) * grid_.nx() + ikx) * grid_.nyh() + iky;
  }
  Complex& at(int ikx, int iky, int iz = 0) noexcept { return data_[index(ikx, iky, iz)]; }
  Complex at(int ikx, int iky, int iz = 0) const noexcept { return data_[index(ikx, iky, iz)]; }

  /// Coefficient of signed mode (kx, ky), reconstructing ky < 0 by symmetry.
  Complex mode(int kx, int ky, int iz = 0) const {
    if (ky < 0) return std::conj(mode(-kx, -ky, iz));
    const int ikx = ((kx % grid_.nx()) + grid_.nx()) % grid_.nx();
    if (ky > grid_.ny() / 2) throw InvalidInput("mode ky out of range");
    return at(ikx, ky, iz);
  }

  std::span<Complex> level(int iz) noexcept {
    return {data_.data() + static_cast<std::size_t>(iz) * grid_.spectral_plane_size(),
            grid_.spectral_plane_size()};
  }
  std::span<const Complex> level(int iz) const noexcept {
    return {data_.data() + static_cast<std::size_t>(iz) * grid_.spectral_plane_size(),
            grid_.spectral_plane_size()};
  }

  std::vector<Complex>& values() noexcept { return data_; }
  const std::vector<Complex>& values() const noexcept { return data_; }

  Spectrum& operator+=(const Spectrum& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Spectrum& operator*=(double s) noexcept {
    for (auto& c : data_) c *= s;
    return *this;
  }

 private:
  Grid grid_;
  std::vector<Complex> data_;
};

using Spectrum2D = Spectrum<PlaneTag>;
using Spectrum3D = Spectrum<VolumeTag>;

/// Fill a plane field from f(x, y).
Field2D sample(const Grid& g, const std::function<double(double, double)>& f);
/// Fill a volume field from f(x, y, z).
Field3D sample(const Grid& g, const std::function<double(double, double, double)>& f);

/// Copy of level iz as a plane field.
Field2D plane_of(const Field3D& f, int iz);
/// Plane field repeated on every level.
Field3D extrude(const Field2D& f);
/// Overwrite level iz with a plane field.
void set_plane(Field3D& f, int iz, const Field2D& p);

}  // namespace alepe
