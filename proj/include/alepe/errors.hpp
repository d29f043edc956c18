#pragma once

#include <stdexcept>
#include <string>

namespace alepe {

/// Input rejected by a precondition check (bad dimensions, unknown symbol, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The ALE map lost invertibility: min J fell to or below the admissibility floor.
class NonInvertibleMap : public std::runtime_error {
 public:
  NonInvertibleMap(const std::string& what, double j_min)
      : std::runtime_error(what), j_min_(j_min) {}
  double j_min() const noexcept { return j_min_; }

 private:
  double j_min_;
};

/// The pressure fixed-point iteration hit its sweep budget without meeting tolerance.
class PressureDiverged : public std::runtime_error {
 public:
  PressureDiverged(const std::string& what, int sweeps, double residual)
      : std::runtime_error(what), sweeps_(sweeps), residual_(residual) {}
  int sweeps() const noexcept { return sweeps_; }
  double residual() const noexcept { return residual_; }

 private:
  int sweeps_;
  double residual_;
};

class WindowTooShort : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace alepe
