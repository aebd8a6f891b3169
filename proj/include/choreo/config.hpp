#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "choreo/dynamics.hpp"
#include "choreo/solver.hpp"
#include "choreo/symmetry.hpp"

namespace choreo::config {

/// Minimal TOML reader covering the config surface: [section] headers,
/// key = value with integers, floats, booleans, strings and flat arrays,
/// '#' comments.  Errors carry file:line positions.
struct TomlValue {
  std::variant<int64_t, double, bool, std::string, std::vector<double>,
               std::vector<int64_t>>
      value;
  int line = 0;
};

class TomlFile {
 public:
  static TomlFile parse(const std::string& text, const std::string& name = "config");

  bool has(const std::string& section, const std::string& key) const;

  int64_t get_int(const std::string& section, const std::string& key) const;
  double get_double(const std::string& section, const std::string& key) const;
  bool get_bool(const std::string& section, const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key) const;
  std::vector<double> get_double_array(const std::string& section,
                                       const std::string& key) const;
  std::vector<int64_t> get_int_array(const std::string& section,
                                     const std::string& key) const;

  int64_t get_int_or(const std::string& section, const std::string& key, int64_t dflt) const;
  double get_double_or(const std::string& section, const std::string& key, double dflt) const;

  std::vector<std::string> keys(const std::string& section) const;

 private:
  const TomlValue& require(const std::string& section, const std::string& key) const;
  std::string name_;
  std::map<std::string, std::map<std::string, TomlValue>> sections_;
};

struct GuessSpec {
  std::map<int, double> amplitudes;
  double jitter = 0.0;
};

struct RunConfig {
  SymmetrySpec symmetry;
  PhysicalParams physics;
  SolverConfig solver;
  GuessSpec guess;
  uint64_t seed = 0;
  // Sweep axes: parameter name -> values (empty outside `sweep` runs).
  std::map<std::string, std::vector<double>> sweep;
};

RunConfig load_run_config(const std::string& path);
RunConfig run_config_from_toml(const TomlFile& toml);

}  // namespace choreo::config
