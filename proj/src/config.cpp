#include "alepe/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace alepe {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string join_errors(const std::vector<FieldError>& errors) {
  std::ostringstream out;
  out << "invalid configuration:";
  for (const auto& e : errors) out << "\n  " << e.key << ": " << e.message;
  return out.str();
}

template <class T>
bool parse_number(std::string_view text, T& out) {
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return !text.empty() && ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

ConfigError::ConfigError(std::vector<FieldError> errors)
    : InvalidInput(join_errors(errors)), errors_(std::move(errors)) {}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::vector<FieldError> errors;
  using Setter = std::function<bool(std::string_view)>;

  auto num = [](auto& field) -> Setter {
    return [&field](std::string_view v) { return parse_number(v, field); };
  };
  auto choice = [](auto& field, auto table) -> Setter {
    return [&field, table](std::string_view v) {
      for (const auto& [name, value] : table)
        if (v == name) {
          field = value;
          return true;
        }
      return false;
    };
  };
  auto str = [](std::string& field) -> Setter {
    return [&field](std::string_view v) {
      field = std::string(v);
      return true;
    };
  };

  const std::map<std::string, Setter, std::less<>> setters = {
      {"nx", num(cfg.nx)},
      {"ny", num(cfg.ny)},
      {"nz", num(cfg.nz)},
      {"dt", num(cfg.step.dt)},
      {"t_end", num(cfg.step.t_end)},
      {"output_every", num(cfg.step.output_every)},
      {"picard_tol", num(cfg.step.picard_tol)},
      {"picard_max_iters", num(cfg.step.picard_max_iters)},
      {"coupling_sweeps", num(cfg.step.coupling_sweeps)},
      {"eps_guard", num(cfg.step.eps_guard)},
      {"regime", choice(cfg.step.regime, std::vector<std::pair<std::string, Regime>>{
                                             {"full", Regime::Full},
                                             {"linear_flat", Regime::LinearFlat}})},
      {"k1_form", choice(cfg.step.k1_form, std::vector<std::pair<std::string, K1Form>>{
                                               {"simplified", K1Form::Simplified},
                                               {"raw", K1Form::Raw}})},
      {"ic.kind", choice(cfg.ic.kind, std::vector<std::pair<std::string, InitialKind>>{
                                          {"rest", InitialKind::Rest},
                                          {"single_mode", InitialKind::SingleMode},
                                          {"random_bandlimited", InitialKind::RandomBandlimited}})},
      {"ic.amplitude", num(cfg.ic.amplitude)},
      {"ic.seed", num(cfg.ic.seed)},
      {"ic.kx", num(cfg.ic.kx)},
      {"ic.ky", num(cfg.ic.ky)},
      {"ic.n", num(cfg.ic.n)},
      {"output.diagnostics", str(cfg.diagnostics_path)},
      {"output.snapshot", str(cfg.snapshot_path)},
  };

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      errors.push_back({"line " + std::to_string(line_no), "expected key = value"});
      continue;
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) {
      errors.push_back({std::string(key), "unknown key"});
      continue;
    }
    if (!it->second(value)) errors.push_back({std::string(key), "cannot parse '" + std::string(value) + "'"});
  }

  if (errors.empty()) {
    try {
      const Grid g = cfg.grid();
      try {
        cfg.step.validate(g);
      } catch (const InvalidInput& e) {
        const std::string what = e.what();
        std::string key = "step";
        for (const char* k : {"dt", "t_end", "coupling_sweeps", "output_every", "eps_guard", "picard_tol",
                              "picard_max_iters"})
          if (what.rfind(k, 0) == 0) key = k;
        errors.push_back({key, what});
      }
    } catch (const InvalidInput& e) {
      const std::string what = e.what();
      errors.push_back({what.rfind("nz", 0) == 0 ? "nz" : "nx/ny", what});
    }
    if (cfg.ic.amplitude < 0.0) errors.push_back({"ic.amplitude", "must be >= 0"});
    if (cfg.ic.n < 1) errors.push_back({"ic.n", "must be >= 1"});
  }
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open config '" + path + "'");
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_config(buf.str());
}

std::string default_config_text() {
  return "nx = 32\n"
         "ny = 32\n"
         "nz = 33\n"
         "dt = 0.001\n"
         "t_end = 0.1\n"
         "output_every = 1\n"
         "picard_tol = 1e-12\n"
         "picard_max_iters = 50\n"
         "coupling_sweeps = 1\n"
         "eps_guard = 0.5\n"
         "regime = full                 # full | linear_flat\n"
         "k1_form = simplified          # simplified | raw\n"
         "ic.kind = rest                # rest | single_mode | random_bandlimited\n"
         "ic.amplitude = 0.01\n"
         "ic.seed = 1\n"
         "ic.kx = 1\n"
         "ic.ky = 0\n"
         "ic.n = 1\n"
         "output.diagnostics =          # CSV path, empty for stdout\n"
         "output.snapshot =             # final snapshot path, empty for none\n";
}

}  // namespace alepe
