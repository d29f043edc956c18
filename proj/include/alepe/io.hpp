#pragma once

#include <array>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "alepe/config.hpp"
#include "alepe/diagnostics.hpp"

namespace alepe {

/// Initial (v1, v2) for the configured kind; both vanish at z = 0 and z = 1.
///   rest:               zero
///   single_mode:        v1 = A cos(kx x1 + ky x2) sin(n pi z), v2 = 0
///   random_bandlimited: random coefficients on |kx|, |ky| <= n/3 times
///                       z(1-z) cos(m pi z), m < 4, scaled to ||v||_{H^2} = A
std::array<Field3D, 2> initial_velocity(const Grid& g, const InitialCondition& ic);

/// CSV header line for report_columns().
void write_diagnostics_header(std::ostream& out);
/// One row in column order, numbers as %.17g.
void write_diagnostics(const EnergyReport& report, std::ostream& out);

struct Snapshot {
  explicit Snapshot(const Grid& g) : v1(g), v2(g), w(g), h(g), h_t(g), p(g) {}

  double t = 0.0;
  Field3D v1, v2, w;
  Field2D h, h_t, p;

  const Grid& grid() const noexcept { return v1.grid(); }
};

Snapshot snapshot_of(const SimState& s);

/// One JSON header line, then raw little-endian float64 arrays for
/// v1, v2, w, h, h_t, p in that order. Throws IoError with the path.
void write_snapshot(const SimState& s, const std::string& path);
void write_snapshot(const Snapshot& s, const std::string& path);
Snapshot read_snapshot(const std::string& path);

/// L2 balance residual recomputed from a diagnostics CSV:
/// |(E_{n+1} - E_{n-1}) / (t_{n+1} - t_{n-1}) + D_n - RHS_n| at interior rows.
struct CsvBalance {
  std::vector<double> t;
  std::vector<double> residual;
  double max = 0.0;
};
/// Throws InvalidInput on missing columns or malformed rows and
/// WindowTooShort with fewer than three rows.
CsvBalance balance_from_csv(std::istream& in);

}  // namespace alepe
