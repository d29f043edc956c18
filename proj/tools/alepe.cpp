#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "alepe/config.hpp"
#include "alepe/diagnostics.hpp"
#include "alepe/io.hpp"
#include "alepe/suites.hpp"

namespace {

using namespace alepe;

enum Exit { Ok = 0, IoFailure = 1, Validation = 2, Collapse = 3, Pressure = 4, CheckFailure = 5 };

int exit_code(RunStatus s) {
  switch (s) {
    case RunStatus::Completed:
      return Ok;
    case RunStatus::MapCollapse:
    case RunStatus::GuardExceeded:
      return Collapse;
    case RunStatus::PressureDiverged:
      return Pressure;
  }
  return Ok;
}

void print_config_errors(const ConfigError& e) {
  nlohmann::ordered_json failures = nlohmann::json::array();
  for (const auto& f : e.errors()) failures.push_back({{"key", f.key}, {"message", f.message}});
  std::cerr << nlohmann::ordered_json{{"error", "config"}, {"failures", failures}}.dump() << '\n';
}

int do_run(const std::string& path) {
  const RunConfig cfg = load_config(path);
  const Grid g = cfg.grid();
  const auto v0 = initial_velocity(g, cfg.ic);
  const SimState initial = prepare_state(v0[0], v0[1], cfg.step);

  std::ofstream file;
  if (!cfg.diagnostics_path.empty()) {
    file.open(cfg.diagnostics_path, std::ios::binary);
    if (!file) throw IoError("cannot open " + cfg.diagnostics_path);
  }
  std::ostream& out = cfg.diagnostics_path.empty() ? std::cout : file;
  write_diagnostics_header(out);
  LedgerRecorder recorder(cfg.step.regime);
  const RunResult result = run(initial, cfg.step, [&](const SimState& s) {
    const EnergyReport r = recorder.observe(s);
    if (s.step % cfg.step.output_every == 0) write_diagnostics(r, out);
  });
  out.flush();
  if (!out) throw IoError("write failed: " + (cfg.diagnostics_path.empty() ? "stdout" : cfg.diagnostics_path));
  if (!cfg.snapshot_path.empty()) write_snapshot(result.final_state, cfg.snapshot_path);

  std::cerr << nlohmann::ordered_json{{"status", to_string(result.status)},
                                      {"t", result.t_abort},
                                      {"message", result.message}}
                   .dump()
            << '\n';
  return exit_code(result.status);
}

int report(const std::vector<LemmaCheckResult>& results) {
  std::cout << format_results(results);
  nlohmann::ordered_json failures = nlohmann::json::array();
  for (const auto& r : results)
    if (r.gated && !r.pass) failures.push_back({{"suite", r.lemma}, {"params", r.params}, {"ratio", r.ratio}});
  std::cerr << nlohmann::ordered_json{{"failures", failures}}.dump() << '\n';
  return failures.empty() ? Ok : CheckFailure;
}

int do_energy(const std::vector<std::string>& paths) {
  std::vector<double> maxima;
  for (const auto& path : paths) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    const CsvBalance b = balance_from_csv(in);
    maxima.push_back(b.max);
    std::cout << nlohmann::ordered_json{{"file", path}, {"rows", b.residual.size() + 2}, {"max_residual", b.max}}
                     .dump()
              << '\n';
  }
  // Successive files are assumed to halve dt.
  for (std::size_t i = 1; i < maxima.size(); ++i) {
    const double order = std::log2(maxima[i - 1] / maxima[i]);
    std::cout << nlohmann::ordered_json{{"from", paths[i - 1]}, {"to", paths[i]}, {"order", order}}.dump()
              << '\n';
  }
  return Ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ALE primitive equations / plate simulator and estimate laboratory"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "Run a simulation, streaming diagnostics CSV");
  run_cmd->add_option("config", config_path, "key = value config file");
  bool print_defaults = false;
  run_cmd->add_flag("--print-defaults", print_defaults, "Print the documented defaults and exit");

  unsigned seed = 1;
  auto* check_cmd = app.add_subcommand("check", "Lemma laboratory and structural property suites");
  check_cmd->add_option("--seed", seed, "Base seed of the random families");

  auto* manufactured_cmd = app.add_subcommand("manufactured", "Manufactured-solution recovery tests");

  std::vector<std::string> csv_paths;
  auto* energy_cmd = app.add_subcommand("energy", "Balance residuals from diagnostics CSVs, dt halving per file");
  energy_cmd->add_option("csv", csv_paths, "Diagnostics CSV files, coarsest first")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? Ok : Validation;
  }
  if (*run_cmd && print_defaults) {
    std::cout << default_config_text();
    return Ok;
  }
  if (*run_cmd && config_path.empty()) {
    std::cerr << "run: a config file is required\n";
    return Validation;
  }

  try {
    if (*run_cmd) return do_run(config_path);
    if (*check_cmd) return report(run_check_suite(seed));
    if (*manufactured_cmd) return report(run_manufactured_suite());
    if (*energy_cmd) return do_energy(csv_paths);
  } catch (const ConfigError& e) {
    print_config_errors(e);
    return Validation;
  } catch (const IoError& e) {
    std::cerr << nlohmann::ordered_json{{"error", "io"}, {"message", e.what()}}.dump() << '\n';
    return IoFailure;
  } catch (const InvalidInput& e) {
    std::cerr << nlohmann::ordered_json{{"error", "validation"}, {"message", e.what()}}.dump() << '\n';
    return Validation;
  } catch (const WindowTooShort& e) {
    std::cerr << nlohmann::ordered_json{{"error", "validation"}, {"message", e.what()}}.dump() << '\n';
    return Validation;
  } catch (const NonInvertibleMap& e) {
    std::cerr << nlohmann::ordered_json{{"error", "map_collapse"}, {"message", e.what()}}.dump() << '\n';
    return Collapse;
  } catch (const PressureDiverged& e) {
    std::cerr << nlohmann::ordered_json{{"error", "pressure_diverged"}, {"message", e.what()}}.dump() << '\n';
    return Pressure;
  }
  return Ok;
}
