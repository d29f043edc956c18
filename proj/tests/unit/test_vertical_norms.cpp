#include <doctest.h>

#include <numbers>

#include "alepe/norms.hpp"
#include "alepe/spectral.hpp"
#include "alepe/vertical.hpp"
#include "common.hpp"

using namespace alepe;
using std::numbers::pi;

TEST_CASE("finite-difference weights reproduce textbook stencils") {
  const double xs[] = {-1.0, 0.0, 1.0};
  const auto w1 = fd_weights(0.0, xs, 1);
  CHECK(w1[0] == doctest::Approx(-0.5));
  CHECK(w1[1] == doctest::Approx(0.0));
  CHECK(w1[2] == doctest::Approx(0.5));
  const auto w2 = fd_weights(0.0, xs, 2);
  CHECK(w2[0] == doctest::Approx(1.0));
  CHECK(w2[1] == doctest::Approx(-2.0));
  CHECK(w2[2] == doctest::Approx(1.0));
}

TEST_CASE("vertical derivatives are exact on low-degree polynomials") {
  const Grid g(8, 8, 17);
  const Field3D z = sample(g, [](double, double, double z) { return z; });
  CHECK(testing::max_diff(vertical_derivative(z, 1), Field3D(g, 1.0)) < 1e-12);
  const Field3D z2 = sample(g, [](double, double, double z) { return z * z; });
  CHECK(testing::max_diff(vertical_derivative(z2, 2), Field3D(g, 2.0)) < 1e-10);
  const Field3D z3 = sample(g, [](double, double, double z) { return z * z * z; });
  CHECK(testing::max_diff(vertical_derivative(z3, 3), Field3D(g, 6.0)) < 1e-7);
  CHECK_THROWS_AS(vertical_derivative(z, 4), InvalidInput);
}

TEST_CASE("first derivative of sin(pi z) converges at second order") {
  double err[2];
  int i = 0;
  for (int nz : {17, 33}) {
    const Grid g(8, 8, nz);
    const Field3D f = sample(g, [](double, double, double z) { return std::sin(pi * z); });
    const Field3D exact = sample(g, [](double, double, double z) { return pi * std::cos(pi * z); });
    err[i++] = testing::max_diff(vertical_derivative(f, 1), exact);
  }
  CHECK(err[0] / err[1] == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("cumulative and column integrals") {
  const Grid g(8, 8, 33);
  const Field3D one(g, 1.0);
  const Field3D c = cumulative_integrate_z(one);
  CHECK(testing::max_diff(c, sample(g, [](double, double, double z) { return z; })) < 1e-14);
  CHECK(plane_of(c, 0).max_abs() == 0.0);
  const Field3D lin = sample(g, [](double, double, double z) { return z; });
  CHECK(testing::max_diff(integrate_z(lin), Field2D(g, 0.5)) < 1e-14);
  CHECK(integrate(one) == doctest::Approx(4.0 * pi * pi).epsilon(1e-14));
  const auto w = trapezoid_weights(5);
  CHECK(w[0] == 0.125);
  CHECK(w[2] == 0.25);
}

TEST_CASE("L2 norm of sin(pi z) under dx1 dx2 dz") {
  const Grid g(16, 16, 129);
  const Field3D f = sample(g, [](double, double, double z) { return std::sin(pi * z); });
  // Trapezoid error is O(dz^2).
  CHECK(l2_norm(f) == doctest::Approx(2.0 * pi * std::sqrt(0.5)).epsilon(1e-4));
  CHECK(l2_norm(f) == doctest::Approx(l2_norm_physical(f)).epsilon(1e-12));
}

TEST_CASE("norms of zero vanish for every spec") {
  const Grid g(16, 16, 17);
  const Field3D zero(g);
  for (Lp inner : {Lp::L2, Lp::L4, Lp::LInf})
    for (Lp outer : {Lp::L2, Lp::L4, Lp::LInf})
      for (Axis axis : {Axis::Vertical, Axis::Horizontal})
        for (int vo : {0, 1, 2})
          CHECK(norm(zero, NormSpec{vo, 1.5, false, inner, outer, axis}) == 0.0);
  CHECK(sobolev_norm(zero, 2.5) == 0.0);
}

TEST_CASE("first horizontal derivative has modulus one at |k| = 1") {
  const Grid g(16, 16, 33);
  const Field3D a = sample(g, [](double x, double, double z) { return std::cos(x) * std::sin(pi * z); });
  const Field3D b = sample(g, [](double x, double, double z) { return std::sin(x) * std::sin(pi * z); });
  NormSpec d1;
  d1.horizontal_order = 1.0;
  CHECK(norm(a, d1) == doctest::Approx(l2_norm(b)).epsilon(1e-13));
  CHECK(hessian_h_norm(a) == doctest::Approx(l2_norm(a)).epsilon(1e-13));
}

TEST_CASE("Parseval agrees with physical quadrature on random fields") {
  const Grid g(16, 16, 17);
  for (unsigned s = 0; s < 10; ++s) {
    const Field3D f = testing::random_field(g, s);
    CHECK(l2_norm(f) == doctest::Approx(l2_norm_physical(f)).epsilon(1e-12));
  }
}

TEST_CASE("mixed norms") {
  const Grid g(16, 16, 33);
  const Field3D f = sample(g, [](double x, double, double z) { return std::cos(x) * z; });
  NormSpec sup;
  sup.inner = Lp::LInf;
  sup.outer = Lp::LInf;
  CHECK(norm(f, sup) == doctest::Approx(1.0));
  // || ||f||_{L^inf_z} ||_{L^4_H} = (int |cos x|^4)^(1/4) = (3 pi^2 / 2)^(1/4).
  NormSpec l4;
  l4.inner = Lp::LInf;
  l4.outer = Lp::L4;
  CHECK(norm(f, l4) == doctest::Approx(std::pow(1.5 * pi * pi, 0.25)).epsilon(1e-12));
  CHECK_THROWS_AS(norm(f, NormSpec{4}), InvalidInput);
}

TEST_CASE("slab Sobolev norm sums vertical derivatives") {
  const Grid g(16, 16, 65);
  const Field3D f = sample(g, [](double x, double, double z) { return std::cos(x) * z; });
  // r = 1: ||(1+|k|^2)^(1/2) f||^2 + ||d3 f||^2 = 2 * 2 pi^2 / 3 + 2 pi^2.
  const double expect = std::sqrt(2.0 * 2.0 * pi * pi / 3.0 + 2.0 * pi * pi);
  CHECK(sobolev_norm(f, 1.0) == doctest::Approx(expect).epsilon(1e-3));
  const Field2D h = sample(g, [](double x, double) { return std::cos(2.0 * x); });
  CHECK(sobolev_norm(h, 2.0) == doctest::Approx(5.0 * std::sqrt(2.0) * pi).epsilon(1e-13));
}
