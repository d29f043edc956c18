#include "alepe/io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <random>

#include <json.hpp>

#include "alepe/norms.hpp"
#include "alepe/spectral.hpp"

namespace alepe {
namespace {

constexpr int kSnapshotVersion = 1;

std::uint64_t swap_bytes(std::uint64_t x) { return __builtin_bswap64(x); }

void write_array(std::ofstream& out, const std::vector<double>& v) {
  if constexpr (std::endian::native == std::endian::little) {
    out.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * 8));
  } else {
    for (double x : v) {
      auto bits = swap_bytes(std::bit_cast<std::uint64_t>(x));
      out.write(reinterpret_cast<const char*>(&bits), 8);
    }
  }
}

void read_array(std::ifstream& in, std::vector<double>& v) {
  in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(v.size() * 8));
  if constexpr (std::endian::native != std::endian::little) {
    for (double& x : v) x = std::bit_cast<double>(swap_bytes(std::bit_cast<std::uint64_t>(x)));
  }
}

}  // namespace

std::array<Field3D, 2> initial_velocity(const Grid& g, const InitialCondition& ic) {
  std::array<Field3D, 2> v{Field3D(g), Field3D(g)};
  switch (ic.kind) {
    case InitialKind::Rest:
      break;
    case InitialKind::SingleMode:
      v[0] = sample(g, [&](double x, double y, double z) {
        return ic.amplitude * std::cos(ic.kx * x + ic.ky * y) * std::sin(ic.n * std::numbers::pi * z);
      });
      break;
    case InitialKind::RandomBandlimited: {
      std::mt19937_64 rng(ic.seed);
      std::normal_distribution<double> nd(0.0, 1.0);
      const int cx = dealias_cutoff(g.nx());
      const int cy = dealias_cutoff(g.ny());
      for (auto& comp : v) {
        Spectrum3D s(g);
        std::array<Spectrum2D, 4> layers{Spectrum2D(g), Spectrum2D(g), Spectrum2D(g), Spectrum2D(g)};
        for (auto& layer : layers)
          for (int ikx = 0; ikx < g.nx(); ++ikx)
            for (int iky = 0; iky < g.nyh(); ++iky) {
              const int kx = g.kx(ikx);
              if (std::abs(kx) > cx || iky > cy) continue;
              const double decay = 1.0 / (1.0 + kx * kx + iky * iky);
              layer.at(ikx, iky) = decay * Complex(nd(rng), iky == 0 && kx == 0 ? 0.0 : nd(rng));
            }
        for (int iz = 0; iz < g.nz(); ++iz) {
          const double z = g.z(iz);
          for (int m = 0; m < 4; ++m) {
            const double prof = z * (1.0 - z) * std::cos(m * std::numbers::pi * z);
            auto dst = s.level(iz);
            auto src = layers[m].level(0);
            for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += prof * src[i];
          }
        }
        // The inverse transform keeps only the Hermitian part of the ky = 0 column.
        comp = inverse(s);
      }
      const double n = std::hypot(sobolev_norm(v[0], 2.0), sobolev_norm(v[1], 2.0));
      if (n > 0.0)
        for (auto& comp : v) comp *= ic.amplitude / n;
      for (auto& comp : v) {
        set_plane(comp, 0, Field2D(g));
        set_plane(comp, g.nz() - 1, Field2D(g));
      }
      break;
    }
  }
  return v;
}

void write_diagnostics_header(std::ostream& out) {
  const auto& cols = report_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
}

void write_diagnostics(const EnergyReport& report, std::ostream& out) {
  const auto values = report_values(report);
  char buf[32];
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", values[i] == 0.0 ? 0.0 : values[i]);
    out << (i ? "," : "") << buf;
  }
  out << '\n';
  if (!out) throw IoError("failed to write diagnostics row");
}

Snapshot snapshot_of(const SimState& s) {
  Snapshot snap(s.grid());
  snap.t = s.t;
  snap.v1 = s.v.v1;
  snap.v2 = s.v.v2;
  snap.w = s.v.w;
  snap.h = s.height.h;
  snap.h_t = s.height.h_t;
  snap.p = s.p.p;
  return snap;
}

void write_snapshot(const SimState& s, const std::string& path) { write_snapshot(snapshot_of(s), path); }

void write_snapshot(const Snapshot& s, const std::string& path) {
  const Grid& g = s.grid();
  nlohmann::ordered_json header;
  header["format"] = "alepe-snapshot";
  header["version"] = kSnapshotVersion;
  header["endianness"] = "little";
  header["dtype"] = "float64";
  header["grid"] = {{"nx", g.nx()}, {"ny", g.ny()}, {"nz", g.nz()}};
  header["t"] = s.t;
  const std::vector<int> vol = {g.nz(), g.nx(), g.ny()};
  const std::vector<int> plane = {g.nx(), g.ny()};
  header["fields"] = nlohmann::ordered_json::array();
  for (const char* name : {"v1", "v2", "w"}) header["fields"].push_back({{"name", name}, {"shape", vol}});
  for (const char* name : {"h", "h_t", "p"}) header["fields"].push_back({{"name", name}, {"shape", plane}});

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open snapshot '" + path + "' for writing");
  out << header.dump() << '\n';
  for (const Field3D* f : {&s.v1, &s.v2, &s.w}) write_array(out, f->values());
  for (const Field2D* f : {&s.h, &s.h_t, &s.p}) write_array(out, f->values());
  if (!out) throw IoError("failed writing snapshot '" + path + "'");
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open snapshot '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw IoError("snapshot '" + path + "' has no header");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw IoError("snapshot '" + path + "': bad header: " + e.what());
  }
  if (header.value("format", "") != "alepe-snapshot" || header.value("endianness", "") != "little")
    throw IoError("snapshot '" + path + "': unsupported format");
  const auto& gj = header.at("grid");
  Snapshot s(Grid(gj.at("nx").get<int>(), gj.at("ny").get<int>(), gj.at("nz").get<int>()));
  s.t = header.at("t").get<double>();
  for (Field3D* f : {&s.v1, &s.v2, &s.w}) read_array(in, f->values());
  for (Field2D* f : {&s.h, &s.h_t, &s.p}) read_array(in, f->values());
  if (!in) throw IoError("snapshot '" + path + "' is truncated");
  return s;
}

}  // namespace alepe

namespace alepe {

CsvBalance balance_from_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput("diagnostics CSV is empty");
  auto split = [](const std::string& l) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = l.find(',', start);
      cells.push_back(l.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return cells;
  };
  const auto header = split(line);
  auto column = [&](const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw InvalidInput("diagnostics CSV lacks column " + name);
  };
  const std::size_t ct = column("t"), ce = column("energy_l2"), cd = column("dissipation_l2"),
                    cr = column("rhs_l2");
  std::vector<std::array<double, 4>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size())
      throw InvalidInput("diagnostics CSV row " + std::to_string(rows.size() + 2) + " has " +
                         std::to_string(cells.size()) + " cells");
    std::array<double, 4> r{};
    const std::size_t idx[4] = {ct, ce, cd, cr};
    for (int k = 0; k < 4; ++k) {
      try {
        r[k] = std::stod(cells[idx[k]]);
      } catch (const std::exception&) {
        throw InvalidInput("diagnostics CSV row " + std::to_string(rows.size() + 2) +
                           ": bad number '" + cells[idx[k]] + "'");
      }
    }
    rows.push_back(r);
  }
  if (rows.size() < 3) throw WindowTooShort("energy balance needs at least three rows");
  CsvBalance out;
  for (std::size_t n = 1; n + 1 < rows.size(); ++n) {
    const double rate = (rows[n + 1][1] - rows[n - 1][1]) / (rows[n + 1][0] - rows[n - 1][0]);
    const double r = std::abs(rate + rows[n][2] - rows[n][3]);
    out.t.push_back(rows[n][0]);
    out.residual.push_back(r);
    out.max = std::max(out.max, r);
  }
  return out;
}

}  // namespace alepe
