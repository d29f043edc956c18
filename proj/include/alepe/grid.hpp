#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>

namespace alepe {

/// Tensor grid on T^2 x [0,1]: nx*ny uniform collocation points on [0,2pi)^2
/// and nz uniform levels on [0,1] including both ends.
class Grid {
 public:
  Grid(int nx, int ny, int nz);

  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }
  int nz() const noexcept { return nz_; }
  /// Number of stored complex coefficients along the second horizontal axis.
  int nyh() const noexcept { return ny_ / 2 + 1; }

  double dx() const noexcept { return 2.0 * std::numbers::pi / nx_; }
  double dy() const noexcept { return 2.0 * std::numbers::pi / ny_; }
  double dz() const noexcept { return 1.0 / (nz_ - 1); }

  double x(int ix) const noexcept { return ix * dx(); }
  double y(int iy) const noexcept { return iy * dy(); }
  double z(int iz) const noexcept { return iz * dz(); }

  std::size_t plane_size() const noexcept { return static_cast<std::size_t>(nx_) * ny_; }
  std::size_t spectral_plane_size() const noexcept {
    return static_cast<std::size_t>(nx_) * nyh();
  }

  /// Signed wavenumber of stored index ikx in [0, nx).
  int kx(int ikx) const noexcept { return ikx <= nx_ / 2 ? ikx : ikx - nx_; }
  /// Wavenumber of stored index iky in [0, ny/2].
  int ky(int iky) const noexcept { return iky; }

  /// Horizontal area of the torus, (2pi)^2.
  static constexpr double area() noexcept { return 4.0 * std::numbers::pi * std::numbers::pi; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int nx_;
  int ny_;
  int nz_;
};

}  // namespace alepe
