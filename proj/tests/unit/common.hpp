#pragma once

#include <cmath>
#include <random>

#include "alepe/field.hpp"

namespace testing {

inline alepe::Field3D random_field(const alepe::Grid& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  alepe::Field3D f(g);
  for (double& x : f.values()) x = u(rng);
  return f;
}

inline alepe::Field2D random_plane(const alepe::Grid& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  alepe::Field2D f(g);
  for (double& x : f.values()) x = u(rng);
  return f;
}

template <class F>
double max_diff(const F& a, const F& b) {
  return (a - b).max_abs();
}

}  // namespace testing
