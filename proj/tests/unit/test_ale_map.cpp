#include <doctest.h>

#include <numbers>

#include "alepe/ale_map.hpp"
#include "alepe/diagnostics.hpp"
#include "alepe/spectral.hpp"
#include "alepe/vertical.hpp"
#include "common.hpp"

using namespace alepe;

namespace {

const double s1 = std::sinh(1.0);

Field2D cosine_interface(const Grid& g, double eps) {
  return sample(g, [eps](double x, double) { return 1.0 + eps * std::cos(x); });
}

}  // namespace

TEST_CASE("flat interface extends to phi = z with identity maps") {
  const Grid g(16, 16, 17);
  const AleMaps m = build_maps(Field2D(g, 1.0), Field2D(g));
  CHECK(testing::max_diff(m.phi, sample(g, [](double, double, double z) { return z; })) < 1e-15);
  const MapBounds b = map_bounds_check(m, 0.01);
  CHECK(b.j_dev < 1e-15);
  CHECK(b.a_dev < 1e-15);
  CHECK(b.b_dev < 1e-15);
  CHECK(b.pass);
}

TEST_CASE("cosine interface matches the sinh profile") {
  const Grid g(32, 32, 33);
  const Field2D h = cosine_interface(g, 0.1);
  const Field3D phi = harmonic_extension(h);
  const Field3D exact = sample(g, [](double x, double, double z) { return z + 0.1 * std::cos(x) * std::sinh(z) / s1; });
  CHECK(testing::max_diff(phi, exact) < 1e-14);
  CHECK(testing::max_diff(plane_of(phi, g.nz() - 1), h) == 0.0);
  CHECK(plane_of(phi, 0).max_abs() == 0.0);
}

TEST_CASE("mode (0,2) profile") {
  const Grid g(32, 32, 33);
  const Field2D h = sample(g, [](double, double y) { return 1.0 + 0.05 * std::sin(2.0 * y); });
  const Field3D exact = sample(g, [](double, double y, double z) {
    return z + 0.05 * std::sin(2.0 * y) * std::sinh(2.0 * z) / std::sinh(2.0);
  });
  CHECK(testing::max_diff(harmonic_extension(h), exact) < 1e-14);
}

TEST_CASE("discrete Laplacian of the extension decays at second order in dz") {
  double r[3];
  int i = 0;
  for (int nz : {17, 33, 65}) {
    const Grid g(32, 32, nz);
    const Field3D phi = harmonic_extension(cosine_interface(g, 0.1));
    r[i++] = (laplacian_h(phi) + vertical_derivative(phi, 2)).max_abs();
  }
  CHECK(r[0] / r[1] == doctest::Approx(4.0).epsilon(0.125));
  CHECK(r[1] / r[2] == doctest::Approx(4.0).epsilon(0.125));
}

TEST_CASE("time derivative of the extension") {
  const Grid g(16, 16, 17);
  CHECK(extension_time_derivative(Field2D(g)).max_abs() == 0.0);
  const Field3D e = extension_time_derivative(sample(g, [](double x, double) { return std::cos(x); }));
  CHECK(testing::max_diff(e, sample(g, [](double x, double, double z) { return std::cos(x) * std::sinh(z) / s1; })) <
        1e-14);
  const Field3D c = extension_time_derivative(Field2D(g, 0.3));
  CHECK(testing::max_diff(c, sample(g, [](double, double, double z) { return 0.3 * z; })) < 1e-15);
}

TEST_CASE("coefficient fields of the cosine map") {
  const Grid g(32, 32, 33);
  const AleMaps m = build_maps(cosine_interface(g, 0.1), Field2D(g));
  const Field3D J = sample(g, [](double x, double, double z) { return 1.0 + 0.1 * std::cos(x) * std::cosh(z) / s1; });
  const Field3D b31 = sample(g, [](double x, double, double z) { return 0.1 * std::sin(x) * std::sinh(z) / s1; });
  CHECK(testing::max_diff(m.J, J) < 1e-14);
  CHECK(testing::max_diff(m.b(2, 0), b31) < 1e-14);
  CHECK(m.b(2, 1).max_abs() < 1e-15);
  // Sparsity and b = J a.
  CHECK(testing::max_diff(m.a(0, 0), Field3D(g, 1.0)) == 0.0);
  CHECK(m.a(0, 1).max_abs() == 0.0);
  CHECK(m.a(0, 2).max_abs() == 0.0);
  CHECK(m.a(1, 2).max_abs() == 0.0);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) CHECK(testing::max_diff(m.b(r, c), m.J * m.a(r, c)) < 1e-12);
  CHECK(testing::max_diff(m.b(2, 2), Field3D(g, 1.0)) == 0.0);
  CHECK(inverse_consistency_residual(m) < 1e-14);
}

TEST_CASE("grad_a3 matches finite differences of a3") {
  const Grid g(32, 32, 129);
  const AleMaps m = build_maps(cosine_interface(g, 0.1), Field2D(g));
  for (int i = 0; i < 3; ++i) {
    const auto grad = m.grad_a3(i);
    CHECK(testing::max_diff(grad[0], dx(m.a(2, i))) < 1e-12);
    CHECK(testing::max_diff(grad[1], dy(m.a(2, i))) < 1e-12);
    CHECK(testing::max_diff(grad[2], vertical_derivative(m.a(2, i), 1)) < 1e-4);
  }
}

TEST_CASE("Piola identity on random interfaces") {
  const Grid g(32, 32, 33);
  for (unsigned s = 0; s < 5; ++s) {
    const AleMaps m = build_maps(random_interface(g, s, 0.2), Field2D(g));
    CHECK(piola_residual(m) < 1e-8);
  }
}

TEST_CASE("map bounds report") {
  const Grid g(32, 32, 33);
  const MapBounds b = map_bounds_check(build_maps(cosine_interface(g, 0.1), Field2D(g)), 0.5);
  CHECK(b.j_dev == doctest::Approx(0.1 * std::cosh(1.0) / s1).epsilon(1e-13));
  CHECK(b.pass);
  // eps scaled so that ||J - 1||_inf = 0.6.
  const double eps = 0.6 * s1 / std::cosh(1.0);
  const MapBounds big = map_bounds_check(build_maps(cosine_interface(g, eps), Field2D(g)), 0.5);
  CHECK(big.j_dev == doctest::Approx(0.6).epsilon(1e-12));
  CHECK_FALSE(big.pass);
  CHECK_THROWS_AS(map_bounds_check(AleMaps::identity(g), 0.7), InvalidInput);
  CHECK_THROWS_AS(map_bounds_check(AleMaps::identity(g), 0.0), InvalidInput);
}

TEST_CASE("non-invertible maps are rejected") {
  const Grid g(32, 32, 33);
  CHECK_THROWS_AS(build_maps(cosine_interface(g, 0.95), Field2D(g)), NonInvertibleMap);
  Field2D bad(g, 1.0);
  bad(0, 0) = std::nan("");
  CHECK_THROWS_AS(build_maps(bad, Field2D(g)), InvalidInput);
}

TEST_CASE("unit normal") {
  const Grid g(32, 32, 9);
  const NormalField flat = normal_vector(Field2D(g, 1.0));
  CHECK(flat.unit[0].max_abs() == 0.0);
  CHECK(testing::max_diff(flat.unit[2], Field2D(g, 1.0)) == 0.0);
  const NormalField n = normal_vector(cosine_interface(g, 0.1));
  const Field2D nu1 = sample(g, [](double x, double) {
    const double s = 0.1 * std::sin(x);
    return s / std::sqrt(s * s + 1.0);
  });
  CHECK(testing::max_diff(n.unit[0], nu1) < 1e-14);
  double worst = 0.0;
  for (std::size_t p = 0; p < g.plane_size(); ++p) {
    double s = 0.0;
    for (int c = 0; c < 3; ++c) s += std::pow(n.unit[c].values()[p], 2);
    worst = std::max(worst, std::abs(s - 1.0));
  }
  CHECK(worst < 1e-15);
}

TEST_CASE("building from extension fields reproduces the maps") {
  const Grid g(16, 16, 17);
  const Field2D h = cosine_interface(g, 0.2);
  const Field2D ht = sample(g, [](double, double y) { return std::sin(y); });
  const AleMaps a = build_maps(h, ht);
  const AleMaps b = build_maps(harmonic_extension(h), extension_time_derivative(ht));
  CHECK(testing::max_diff(a.J, b.J) < 1e-15);
  CHECK(testing::max_diff(a.phi_t, b.phi_t) < 1e-15);
}
