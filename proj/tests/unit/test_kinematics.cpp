#include <doctest.h>

#include <numbers>

#include "alepe/kinematics.hpp"
#include "alepe/spectral.hpp"
#include "alepe/vertical.hpp"
#include "common.hpp"

using namespace alepe;
using std::numbers::pi;

namespace {

const double s1 = std::sinh(1.0);

AleMaps cosine_map(const Grid& g, double eps) {
  return build_maps(sample(g, [eps](double x, double) { return 1.0 + eps * std::cos(x); }), Field2D(g));
}

Field3D parabola_sin(const Grid& g) {
  return sample(g, [](double x, double, double z) { return z * (1.0 - z) * std::sin(x); });
}

}  // namespace

TEST_CASE("zero velocity has zero divergence and zero w") {
  const Grid g(16, 16, 17);
  const AleMaps m = cosine_map(g, 0.1);
  const VelocityState v(g);
  CHECK(div_aH(v, m).max_abs() == 0.0);
  CHECK(recover_w(v, m).max_abs() == 0.0);
}

TEST_CASE("flat map divergence is the horizontal divergence") {
  const Grid g(32, 32, 17);
  VelocityState v(g);
  v.v1 = sample(g, [](double x, double, double z) { return std::sin(x) * std::exp(z); });
  const Field3D expect = sample(g, [](double x, double, double z) { return std::cos(x) * std::exp(z); });
  CHECK(testing::max_diff(div_aH(v, AleMaps::identity(g)), expect) < 1e-13);
}

TEST_CASE("divergence on the cosine map") {
  const Grid g(32, 32, 33);
  const double eps = 0.1;
  const AleMaps m = cosine_map(g, eps);
  VelocityState v(g);
  v.v1 = parabola_sin(g);
  const Field3D expect = sample(g, [eps](double x, double, double z) {
    const double J = 1.0 + eps * std::cos(x) * std::cosh(z) / s1;
    const double a31 = eps * std::sin(x) * std::sinh(z) / (s1 * J);
    return std::cos(x) * z * (1.0 - z) + a31 * (1.0 - 2.0 * z) * std::sin(x);
  });
  CHECK(testing::max_diff(div_aH(v, m), expect) < 1e-13);
  CHECK(testing::max_diff(divergence_flux(v, m), m.J * expect) < 1e-13);
}

TEST_CASE("recovered w on the flat map") {
  const Grid g(32, 32, 65);
  VelocityState v(g);
  v.v1 = parabola_sin(g);
  const Field3D w = recover_w(v, AleMaps::identity(g));
  const Field3D exact = sample(g, [](double x, double, double z) { return -std::cos(x) * (z * z / 2.0 - z * z * z / 3.0); });
  // Cumulative trapezoid on a quadratic: error dz^2 z / 6.
  CHECK(testing::max_diff(w, exact) <= g.dz() * g.dz() / 6.0 + 1e-14);
  CHECK(plane_of(w, 0).max_abs() == 0.0);
  v.w = w;
  CHECK(divergence_residual(v, AleMaps::identity(g)) < g.dz() * g.dz());
}

TEST_CASE("divergence residual is second order on a curved map") {
  double r[2];
  int i = 0;
  for (int nz : {33, 65}) {
    const Grid g(32, 32, nz);
    const AleMaps m = cosine_map(g, 0.2);
    VelocityState v(g);
    v.v1 = sample(g, [](double x, double y, double z) { return std::sin(pi * z) * std::sin(x + y); });
    v.v2 = sample(g, [](double x, double, double z) { return std::sin(2.0 * pi * z) * std::cos(x); });
    v.w = recover_w(v, m);
    r[i++] = divergence_residual(v, m);
  }
  CHECK(r[0] / r[1] == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("gradient along the map") {
  const Grid g(32, 32, 33);
  const AleMaps m = cosine_map(g, 0.1);
  const Field3D p = extrude(sample(g, [](double x, double y) { return std::cos(x) * std::sin(2.0 * y); }));
  const auto gp = grad_aH(p, m);
  CHECK(testing::max_diff(gp[0], dx(p)) < 1e-12);
  CHECK(testing::max_diff(gp[1], dy(p)) < 1e-12);
  const auto gflat = grad_aH(p, AleMaps::identity(g));
  CHECK(testing::max_diff(gflat[0], dx(p)) == 0.0);
}

TEST_CASE("gradient of phi along the map cancels up to the vertical difference error") {
  double r[2];
  int i = 0;
  for (int nz : {33, 65}) {
    const Grid g(32, 32, nz);
    const AleMaps m = cosine_map(g, 0.1);
    const auto gphi = grad_aH(m.phi, m);
    // d_i phi + a3i D3 phi = a3i (D3 phi - J): exact algebra, leaving only the difference error.
    const Field3D fd_error = vertical_derivative(m.phi, 1) - m.J;
    CHECK(testing::max_diff(gphi[0], m.a(2, 0) * fd_error) < 1e-15);
    CHECK(testing::max_diff(gphi[1], m.a(2, 1) * fd_error) < 1e-15);
    r[i++] = gphi[0].max_abs();
  }
  CHECK(r[0] / r[1] == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("flat map Laplacian of sin(x1) sin(pi z)") {
  double err[2];
  int i = 0;
  for (int nz : {33, 65}) {
    const Grid g(16, 16, nz);
    const Field3D u = sample(g, [](double x, double, double z) { return std::sin(x) * std::sin(pi * z); });
    const AleMaps m = AleMaps::identity(g);
    CHECK(laplacian_correction(u, m).max_abs() == 0.0);
    err[i++] = testing::max_diff(variable_laplacian(u, m), u * -(1.0 + pi * pi));
  }
  // Centered 3-point error pi^4 dz^2 / 12 in the interior; the one-sided walls carry a larger constant.
  CHECK(err[1] < pi * pi * pi * pi / (64.0 * 64.0));
  CHECK(err[0] / err[1] == doctest::Approx(4.0).epsilon(0.2));
}

TEST_CASE("variable Laplacian of z(1-z) on the cosine map against the closed form") {
  // 32 points keep the 2/3-rule truncation of the products below 1e-12.
  const Grid g(32, 32, 17);
  const double eps = 0.1;
  const AleMaps m = cosine_map(g, eps);
  const Field3D u = sample(g, [](double, double, double z) { return z * (1.0 - z); });
  const Field3D expect = sample(g, [eps](double x, double, double z) {
    const double c = std::cos(x), s = std::sin(x);
    const double S = std::sinh(z) / s1, Sp = std::cosh(z) / s1;
    const double J = 1.0 + eps * c * Sp;
    const double a31 = eps * s * S / J, a33 = 1.0 / J;
    const double d1a31 = eps * c * S / J + eps * s * S * eps * s * Sp / (J * J);
    const double d3a31 = eps * s * Sp / J - eps * s * S * eps * c * S / (J * J);
    const double d3a33 = -eps * c * S / (J * J);
    const double up = 1.0 - 2.0 * z, upp = -2.0;
    return up * d1a31 + a31 * (d3a31 * up + a31 * upp) + a33 * (d3a33 * up + a33 * upp);
  });
  CHECK(testing::max_diff(variable_laplacian(u, m), expect) < 1e-11);
}

TEST_CASE("variable Laplacian of an x-independent constant is zero") {
  const Grid g(16, 16, 17);
  CHECK(variable_laplacian(Field3D(g, 2.0), cosine_map(g, 0.1)).max_abs() < 1e-12);
}

TEST_CASE("advection on the flat map") {
  const Grid g(32, 32, 33);
  VelocityState v(g);
  v.v1 = parabola_sin(g);
  v.w = sample(g, [](double x, double, double z) { return -std::cos(x) * (z * z / 2.0 - z * z * z / 3.0); });
  const auto n = advect(v, AleMaps::identity(g));
  const Field3D expect = sample(g, [](double x, double, double z) {
    const double w = -std::cos(x) * (z * z / 2.0 - z * z * z / 3.0);
    return std::sin(x) * std::cos(x) * std::pow(z * (1.0 - z), 2) + w * (1.0 - 2.0 * z) * std::sin(x);
  });
  CHECK(testing::max_diff(n[0], expect) < 1e-13);
  CHECK(n[1].max_abs() == 0.0);
  CHECK(advect(VelocityState(g), AleMaps::identity(g))[0].max_abs() == 0.0);
}

TEST_CASE("advection of a z-independent shear vanishes") {
  const Grid g(32, 32, 17);
  VelocityState v(g);
  v.v1 = sample(g, [](double, double y, double) { return std::sin(y); });
  v.w = recover_w(v, AleMaps::identity(g));
  CHECK(v.w.max_abs() == 0.0);
  const auto n = advect(v, AleMaps::identity(g));
  CHECK(n[0].max_abs() < 1e-15);
  CHECK(n[1].max_abs() < 1e-15);
}

TEST_CASE("mesh velocity enters advection through w - phi_t") {
  const Grid g(16, 16, 17);
  AleMaps m = AleMaps::identity(g);
  set_extension_velocity(m, Field2D(g, 1.0));  // phi_t = z
  VelocityState v(g);
  v.v1 = sample(g, [](double, double, double z) { return z * (1.0 - z); });
  const auto n = advect(v, m);
  const Field3D expect = sample(g, [](double, double, double z) { return -z * (1.0 - 2.0 * z); });
  CHECK(testing::max_diff(n[0], expect) < 1e-14);
}
