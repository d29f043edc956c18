#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "alepe/grid.hpp"
#include "alepe/stepper.hpp"

namespace alepe {

enum class InitialKind { Rest, SingleMode, RandomBandlimited };

struct InitialCondition {
  InitialKind kind = InitialKind::Rest;
  /// single_mode: sup of v1. random_bandlimited: H^2 norm of (v1, v2).
  double amplitude = 0.01;
  unsigned seed = 1;
  int kx = 1;
  int ky = 0;
  int n = 1;
};

struct RunConfig {
  int nx = 32;
  int ny = 32;
  int nz = 33;
  StepConfig step;
  InitialCondition ic;
  std::string diagnostics_path;  // empty: stdout
  std::string snapshot_path;     // empty: no snapshot

  Grid grid() const { return Grid(nx, ny, nz); }
};

struct FieldError {
  std::string key;
  std::string message;
};

/// Thrown by parse_config with every problem found, each tied to its key.
class ConfigError : public InvalidInput {
 public:
  explicit ConfigError(std::vector<FieldError> errors);
  const std::vector<FieldError>& errors() const noexcept { return errors_; }

 private:
  std::vector<FieldError> errors_;
};

/// Parses `key = value` lines; '#' starts a comment. Unknown keys, bad values
/// and guard violations are collected and thrown together as ConfigError.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// Documented keys with their defaults, one per line, in file syntax.
std::string default_config_text();

}  // namespace alepe
