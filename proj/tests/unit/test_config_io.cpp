#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "alepe/config.hpp"
#include "alepe/io.hpp"
#include "alepe/norms.hpp"
#include "common.hpp"

using namespace alepe;

namespace {

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("alepe_test_" + name);
}

bool has_error(const ConfigError& e, const std::string& key) {
  for (const auto& f : e.errors())
    if (f.key == key) return true;
  return false;
}

}  // namespace

TEST_CASE("empty config gives the documented defaults") {
  const RunConfig c = parse_config("");
  CHECK(c.nx == 32);
  CHECK(c.nz == 33);
  CHECK(c.step.dt == 1e-3);
  CHECK(c.step.picard_tol == 1e-12);
  CHECK(c.step.eps_guard == 0.5);
  CHECK(c.ic.kind == InitialKind::Rest);
}

TEST_CASE("default config text parses to the defaults") {
  const RunConfig a = parse_config(default_config_text());
  const RunConfig b = parse_config("# nothing\n\n");
  CHECK(a.nx == b.nx);
  CHECK(a.step.t_end == b.step.t_end);
  CHECK(a.ic.amplitude == b.ic.amplitude);
}

TEST_CASE("values, comments and enums") {
  const RunConfig c = parse_config(
      "nx = 16  # horizontal\nny=16\nnz = 17\ndt = 2e-3\nregime = linear_flat\nk1_form = raw\n"
      "ic.kind = single_mode\nic.kx = 2\nic.amplitude = 0.25\noutput.diagnostics = out.csv\n");
  CHECK(c.nx == 16);
  CHECK(c.step.dt == 2e-3);
  CHECK(c.step.regime == Regime::LinearFlat);
  CHECK(c.step.k1_form == K1Form::Raw);
  CHECK(c.ic.kind == InitialKind::SingleMode);
  CHECK(c.ic.kx == 2);
  CHECK(c.ic.amplitude == 0.25);
  CHECK(c.diagnostics_path == "out.csv");
}

TEST_CASE("errors are collected with their keys") {
  try {
    parse_config("colour = red\nnx = sixteen\nregime = wobbly\npicard_max_iters = 2.5\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.errors().size() == 4);
    CHECK(has_error(e, "colour"));
    CHECK(has_error(e, "nx"));
    CHECK(has_error(e, "regime"));
    CHECK(has_error(e, "picard_max_iters"));
  }
}

TEST_CASE("guard violations name both values") {
  try {
    parse_config("nz = 9\ndt = 0.05\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    REQUIRE(has_error(e, "dt"));
    for (const auto& f : e.errors())
      if (f.key == "dt") {
        CHECK(f.message.find("0.05") != std::string::npos);
        CHECK(f.message.find("0.03125") != std::string::npos);
      }
  }
}

TEST_CASE("even nz and bad eps are rejected") {
  CHECK_THROWS_AS(parse_config("nz = 32\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("eps_guard = 0.7\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("nx\n"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/alepe.cfg"), IoError);
}

TEST_CASE("initial conditions satisfy no-slip and the requested size") {
  const Grid g(16, 16, 17);
  InitialCondition ic;
  ic.kind = InitialKind::RandomBandlimited;
  ic.amplitude = 0.3;
  const auto v = initial_velocity(g, ic);
  for (const auto& c : v) {
    CHECK(plane_of(c, 0).max_abs() == 0.0);
    CHECK(plane_of(c, g.nz() - 1).max_abs() == 0.0);
  }
  CHECK(std::hypot(sobolev_norm(v[0], 2.0), sobolev_norm(v[1], 2.0)) == doctest::Approx(0.3).epsilon(1e-12));
  ic.kind = InitialKind::SingleMode;
  const auto s = initial_velocity(g, ic);
  CHECK(s[0].max_abs() == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(s[1].max_abs() == 0.0);
  ic.kind = InitialKind::Rest;
  CHECK(initial_velocity(g, ic)[0].max_abs() == 0.0);
}

TEST_CASE("rest-state CSV row is zeros after the time column") {
  const Grid g(16, 16, 17);
  const SimState s = prepare_state(Field3D(g), Field3D(g), StepConfig{});
  LedgerRecorder rec;
  std::ostringstream out;
  write_diagnostics(rec.observe(s), out);
  CHECK(out.str() == "0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,1\n");
  std::ostringstream header;
  write_diagnostics_header(header);
  CHECK(header.str().rfind("t,dpp_v,", 0) == 0);
}

TEST_CASE("snapshot round trip is bitwise") {
  const Grid g(16, 8, 9);
  Snapshot s(g);
  s.t = 0.125;
  s.v1 = testing::random_field(g, 1);
  s.v2 = testing::random_field(g, 2);
  s.w = testing::random_field(g, 3);
  s.h = testing::random_plane(g, 4);
  s.h_t = testing::random_plane(g, 5);
  s.p = testing::random_plane(g, 6);
  const auto path = temp_path("snapshot.bin");
  write_snapshot(s, path.string());
  const Snapshot r = read_snapshot(path.string());
  std::filesystem::remove(path);
  CHECK(r.t == s.t);
  CHECK(r.grid() == g);
  CHECK(r.v1.values() == s.v1.values());
  CHECK(r.v2.values() == s.v2.values());
  CHECK(r.w.values() == s.w.values());
  CHECK(r.h.values() == s.h.values());
  CHECK(r.h_t.values() == s.h_t.values());
  CHECK(r.p.values() == s.p.values());
}

TEST_CASE("snapshot header is a JSON line") {
  const Grid g(8, 8, 9);
  const auto path = temp_path("header.bin");
  write_snapshot(Snapshot(g), path.string());
  std::ifstream in(path, std::ios::binary);
  std::string line;
  std::getline(in, line);
  in.close();
  std::filesystem::remove(path);
  CHECK(line.find("\"endianness\":\"little\"") != std::string::npos);
  CHECK(line.find("\"v1\"") != std::string::npos);
}

TEST_CASE("snapshot I/O failures carry the path") {
  try {
    read_snapshot("/nonexistent/snap.bin");
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("/nonexistent/snap.bin") != std::string::npos);
  }
  const auto path = temp_path("garbage.bin");
  std::ofstream(path) << "not a snapshot\n";
  CHECK_THROWS_AS(read_snapshot(path.string()), IoError);
  std::filesystem::remove(path);
}

TEST_CASE("CSV balance parsing errors") {
  std::istringstream missing("t,energy_l2\n0,1\n");
  CHECK_THROWS_AS(balance_from_csv(missing), InvalidInput);
  std::istringstream short_csv("t,energy_l2,dissipation_l2,rhs_l2\n0,1,0,0\n1,1,0,0\n");
  CHECK_THROWS_AS(balance_from_csv(short_csv), WindowTooShort);
  std::istringstream exact("t,energy_l2,dissipation_l2,rhs_l2\n0,1,1,0\n1,0,1,0\n2,-1,1,0\n");
  CHECK(balance_from_csv(exact).max == 0.0);
}
