#include "alepe/ale_map.hpp"

#include <cmath>
#include <string>

#include "alepe/spectral.hpp"

namespace alepe {
namespace {

struct Profile {
  double value;
  double d1;
  double d2;
};

// Vertical profile of the harmonic extension for horizontal wavenumber |k|.
Profile extension_profile(double k, double z) {
  if (k == 0.0) return {z, 1.0, 0.0};
  const double s = std::sinh(k);
  const double v = std::sinh(k * z) / s;
  return {v, k * std::cosh(k * z) / s, k * k * v};
}

struct ExtensionSpectra {
  Spectrum3D phi;
  Spectrum3D dz;
  Spectrum3D dzz;
};

ExtensionSpectra extension_spectra(const Field2D& h) {
  const Grid& g = h.grid();
  const Spectrum2D hs = forward(h);
  ExtensionSpectra out{Spectrum3D(g), Spectrum3D(g), Spectrum3D(g)};
  for (int iz = 0; iz < g.nz(); ++iz) {
    const double z = g.z(iz);
    for (int ikx = 0; ikx < g.nx(); ++ikx) {
      for (int iky = 0; iky < g.nyh(); ++iky) {
        const double k1 = g.kx(ikx);
        const double k2 = g.ky(iky);
        const Profile p = extension_profile(std::sqrt(k1 * k1 + k2 * k2), z);
        const Complex c = hs.at(ikx, iky);
        out.phi.at(ikx, iky, iz) = c * p.value;
        out.dz.at(ikx, iky, iz) = c * p.d1;
        out.dzz.at(ikx, iky, iz) = c * p.d2;
      }
    }
  }
  return out;
}

Field3D extension_from_spectrum(const Spectrum3D& s, const Field2D& trace) {
  Field3D phi = inverse(s);
  set_plane(phi, 0, Field2D(trace.grid()));
  set_plane(phi, trace.grid().nz() - 1, trace);
  return phi;
}

}  // namespace

HeightState HeightState::flat(const Grid& g) { return {Field2D(g, 1.0), Field2D(g, 0.0)}; }

MatrixField::MatrixField(const Grid& g)
    : m_{Field3D(g), Field3D(g), Field3D(g), Field3D(g), Field3D(g),
         Field3D(g), Field3D(g), Field3D(g), Field3D(g)} {}

AleMaps::AleMaps(const Grid& g)
    : phi(g), phi_t(g), J(g, 1.0), dphi{Field3D(g), Field3D(g)},
      phi11(g), phi12(g), phi22(g), phi13(g), phi23(g), phi33(g), a(g), b(g) {}

AleMaps AleMaps::identity(const Grid& g) { return build_maps(Field2D(g, 1.0), Field2D(g, 0.0)); }

std::array<Field3D, 3> AleMaps::grad_a3(int i) const {
  const Grid& g = grid();
  std::array<Field3D, 3> out{Field3D(g), Field3D(g), Field3D(g)};
  // d_j J for j = 1, 2, 3.
  const Field3D* dJ[3] = {&phi13, &phi23, &phi33};
  const Field3D* second[2][3] = {{&phi11, &phi12, &phi13}, {&phi12, &phi22, &phi23}};
  const std::size_t n = J.size();
  for (int j = 0; j < 3; ++j) {
    auto& dst = out[j].values();
    const auto& jv = J.values();
    const auto& djv = dJ[j]->values();
    if (i < 2) {
      const auto& pi = dphi[i].values();
      const auto& pij = second[i][j]->values();
      for (std::size_t p = 0; p < n; ++p)
        dst[p] = -pij[p] / jv[p] + pi[p] * djv[p] / (jv[p] * jv[p]);
    } else {
      for (std::size_t p = 0; p < n; ++p) dst[p] = -djv[p] / (jv[p] * jv[p]);
    }
  }
  return out;
}

Field3D harmonic_extension(const Field2D& h) {
  return extension_from_spectrum(extension_spectra(h).phi, h);
}

Field3D extension_time_derivative(const Field2D& h_t) { return harmonic_extension(h_t); }

Field3D extension_dz(const Field2D& g) { return inverse(extension_spectra(g).dz); }

AleMaps build_maps(const Field2D& h, const Field2D& h_t) {
  const Grid& g = h.grid();
  if (!h.all_finite() || !h_t.all_finite()) throw InvalidInput("interface fields must be finite");
  const ExtensionSpectra s = extension_spectra(h);

  AleMaps m(g);
  m.phi = extension_from_spectrum(s.phi, h);
  m.phi_t = extension_time_derivative(h_t);
  m.J = inverse(s.dz);
  m.phi33 = inverse(s.dzz);

  const Spectrum3D d1 = apply(s.phi, Multiplier::d1());
  const Spectrum3D d2 = apply(s.phi, Multiplier::d2());
  m.dphi[0] = inverse(d1);
  m.dphi[1] = inverse(d2);
  m.phi11 = inverse(apply(d1, Multiplier::d1()));
  m.phi12 = inverse(apply(d1, Multiplier::d2()));
  m.phi22 = inverse(apply(d2, Multiplier::d2()));
  m.phi13 = inverse(apply(s.dz, Multiplier::d1()));
  m.phi23 = inverse(apply(s.dz, Multiplier::d2()));

  const double j_min = m.J.min();
  if (!(j_min > 0.0))
    throw NonInvertibleMap("ALE map not invertible: min J = " + std::to_string(j_min), j_min);

  const std::size_t n = m.J.size();
  m.a(0, 0) = Field3D(g, 1.0);
  m.a(1, 1) = Field3D(g, 1.0);
  m.b(2, 2) = Field3D(g, 1.0);
  m.b(0, 0) = m.J;
  m.b(1, 1) = m.J;
  const auto& jv = m.J.values();
  for (std::size_t p = 0; p < n; ++p) {
    const double inv = 1.0 / jv[p];
    const double p1 = m.dphi[0].values()[p];
    const double p2 = m.dphi[1].values()[p];
    m.a(2, 0).values()[p] = -p1 * inv;
    m.a(2, 1).values()[p] = -p2 * inv;
    m.a(2, 2).values()[p] = inv;
    m.b(2, 0).values()[p] = -p1;
    m.b(2, 1).values()[p] = -p2;
  }
  return m;
}

AleMaps build_maps(const Field3D& phi, const Field3D& phi_t) {
  const int top = phi.grid().nz() - 1;
  return build_maps(plane_of(phi, top), plane_of(phi_t, top));
}

void set_extension_velocity(AleMaps& maps, const Field2D& h_t) {
  maps.phi_t = extension_time_derivative(h_t);
}

NormalField normal_vector(const Field2D& h) {
  const Grid& g = h.grid();
  NormalField n{{-dx(h), -dy(h), Field2D(g, 1.0)}, {Field2D(g), Field2D(g), Field2D(g)}};
  for (std::size_t p = 0; p < g.plane_size(); ++p) {
    const double a = n.raw[0].values()[p];
    const double b = n.raw[1].values()[p];
    const double scale = 1.0 / std::sqrt(a * a + b * b + 1.0);
    for (int c = 0; c < 3; ++c) n.unit[c].values()[p] = n.raw[c].values()[p] * scale;
  }
  return n;
}

MapBounds map_bounds_check(const AleMaps& maps, double eps) {
  if (!(eps > 0.0 && eps <= 0.5)) throw InvalidInput("eps must lie in (0, 1/2]");
  MapBounds r;
  r.j_min = maps.J.min();
  r.j_max = maps.J.max();
  for (double j : maps.J.values()) r.j_dev = std::max(r.j_dev, std::abs(j - 1.0));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double delta = i == j ? 1.0 : 0.0;
      for (double x : maps.a(i, j).values()) r.a_dev = std::max(r.a_dev, std::abs(x - delta));
      for (double x : maps.b(i, j).values()) r.b_dev = std::max(r.b_dev, std::abs(x - delta));
    }
  }
  r.pass = r.j_dev <= eps;
  return r;
}

double piola_residual(const AleMaps& maps) {
  // Column l = 1: d1 b11 + d3 b31 = d1 J - d13 phi; column 2 likewise;
  // column 3: d3 b33 = 0 identically.
  const Field3D r1 = dx(maps.J) - maps.phi13;
  const Field3D r2 = dy(maps.J) - maps.phi23;
  return std::max(r1.max_abs(), r2.max_abs());
}

double inverse_consistency_residual(const AleMaps& maps) {
  const Grid& g = maps.grid();
  // grad eta rows: (1,0,0), (0,1,0), (d1 phi, d2 phi, J).
  std::array<const Field3D*, 9> eta{};
  const Field3D one(g, 1.0);
  const Field3D zero(g, 0.0);
  eta = {&one, &zero, &zero, &zero, &one, &zero, &maps.dphi[0], &maps.dphi[1], &maps.J};
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double delta = i == j ? 1.0 : 0.0;
      for (std::size_t p = 0; p < one.size(); ++p) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) s += maps.a(i, k).values()[p] * eta[3 * k + j]->values()[p];
        worst = std::max(worst, std::abs(s - delta));
      }
    }
  }
  return worst;
}

}  // namespace alepe
