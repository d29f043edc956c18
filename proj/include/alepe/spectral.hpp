#pragma once

#include <string_view>

#include "alepe/field.hpp"

namespace alepe {

/// Forward horizontal transform, level by level. Coefficient of mode k is
/// (1/(nx*ny)) * sum_x f(x) exp(-i k.x).
Spectrum2D forward(const Field2D& f);
Spectrum3D forward(const Field3D& f);

/// Inverse of forward: f(x) = sum_k c_k exp(i k.x).
Field2D inverse(const Spectrum2D& s);
Field3D inverse(const Spectrum3D& s);

enum class MultiplierKind { D1, D2, Laplacian, Bilaplacian, AbsPower, Bessel };

/// Horizontal Fourier multiplier applied identically on every level.
///   D1, D2      : i k1, i k2 (zero on the Nyquist line of that axis)
///   Laplacian   : -|k|^2
///   Bilaplacian : |k|^4
///   AbsPower    : |k|^beta, with the (0,0) mode annihilated for beta > 0
///   Bessel      : (1 + |k|^2)^(s/2); s = 1 is the operator (I - Delta_H)^(1/2)
struct Multiplier {
  MultiplierKind kind;
  double order = 0.0;

  static Multiplier d1() { return {MultiplierKind::D1}; }
  static Multiplier d2() { return {MultiplierKind::D2}; }
  static Multiplier laplacian() { return {MultiplierKind::Laplacian}; }
  static Multiplier bilaplacian() { return {MultiplierKind::Bilaplacian}; }
  static Multiplier abs_power(double beta);
  static Multiplier bessel(double s = 1.0);

  Complex symbol(const Grid& g, int ikx, int iky) const noexcept;
};

/// Parses "d1", "d2", "lap", "bilap", "abs:<beta>", "bessel" or "bessel:<s>".
Multiplier parse_multiplier(std::string_view text);

template <class Tag>
Spectrum<Tag> apply(Spectrum<Tag> s, const Multiplier& m) {
  const Grid& g = s.grid();
  for (int iz = 0; iz < s.levels(); ++iz)
    for (int ikx = 0; ikx < g.nx(); ++ikx)
      for (int iky = 0; iky < g.nyh(); ++iky) s.at(ikx, iky, iz) *= m.symbol(g, ikx, iky);
  return s;
}

/// Physical-space convenience: transform, multiply, transform back.
Field2D apply(const Field2D& f, const Multiplier& m);
Field3D apply(const Field3D& f, const Multiplier& m);

Field2D dx(const Field2D& f);
Field2D dy(const Field2D& f);
Field3D dx(const Field3D& f);
Field3D dy(const Field3D& f);
Field2D laplacian_h(const Field2D& f);
Field3D laplacian_h(const Field3D& f);

/// Largest retained wavenumber per axis under the 2/3 rule.
int dealias_cutoff(int n) noexcept;

/// Zero every mode with |kx| > nx/3 or |ky| > ny/3.
template <class Tag>
void truncate(Spectrum<Tag>& s) {
  const Grid& g = s.grid();
  const int cx = dealias_cutoff(g.nx());
  const int cy = dealias_cutoff(g.ny());
  for (int iz = 0; iz < s.levels(); ++iz)
    for (int ikx = 0; ikx < g.nx(); ++ikx)
      for (int iky = 0; iky < g.nyh(); ++iky)
        if (std::abs(g.kx(ikx)) > cx || iky > cy) s.at(ikx, iky, iz) = 0.0;
}

/// Physical-space 2/3-rule filter, applied to fields formed from pointwise products.
Field2D dealias(const Field2D& f);
Field3D dealias(const Field3D& f);

}  // namespace alepe
