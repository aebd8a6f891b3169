#include "choreo/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "choreo/io.hpp"

namespace choreo::config {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

[[noreturn]] void fail(const std::string& name, int line, const std::string& what) {
  throw ConfigError(name + ":" + std::to_string(line) + ": " + what);
}

bool parse_int(const std::string& tok, int64_t& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

bool parse_double(const std::string& tok, double& out) {
  try {
    size_t used = 0;
    out = std::stod(tok, &used);
    return used == tok.size();
  } catch (...) {
    return false;
  }
}

TomlValue parse_scalar(const std::string& name, int line, const std::string& tok) {
  TomlValue v;
  v.line = line;
  if (tok == "true") {
    v.value = true;
  } else if (tok == "false") {
    v.value = false;
  } else if (tok.size() >= 2 && tok.front() == '"' && tok.back() == '"') {
    v.value = tok.substr(1, tok.size() - 2);
  } else {
    int64_t i;
    double d;
    if (parse_int(tok, i))
      v.value = i;
    else if (parse_double(tok, d))
      v.value = d;
    else
      fail(name, line, "cannot parse value '" + tok + "'");
  }
  return v;
}

}  // namespace

TomlFile TomlFile::parse(const std::string& text, const std::string& name) {
  TomlFile file;
  file.name_ = name;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const size_t hash = raw.find('#');
    std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(name, line_no, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) fail(name, line_no, "empty section name");
      file.sections_[section];
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos) fail(name, line_no, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty()) fail(name, line_no, "empty key");
    if (val.empty()) fail(name, line_no, "missing value for key '" + key + "'");

    TomlValue value;
    if (val.front() == '[') {
      if (val.back() != ']') fail(name, line_no, "unterminated array for key '" + key + "'");
      std::vector<int64_t> ints;
      std::vector<double> doubles;
      bool all_int = true;
      std::string body = val.substr(1, val.size() - 2);
      std::istringstream items(body);
      std::string item;
      while (std::getline(items, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        int64_t i;
        double d;
        if (all_int && parse_int(item, i)) {
          ints.push_back(i);
          doubles.push_back(static_cast<double>(i));
        } else if (parse_double(item, d)) {
          all_int = false;
          doubles.push_back(d);
        } else {
          fail(name, line_no, "cannot parse array element '" + item + "'");
        }
      }
      value.line = line_no;
      if (all_int)
        value.value = ints;
      else
        value.value = doubles;
    } else {
      value = parse_scalar(name, line_no, val);
    }
    file.sections_[section][key] = std::move(value);
  }
  return file;
}

const TomlValue& TomlFile::require(const std::string& section,
                                   const std::string& key) const {
  const auto sec = sections_.find(section);
  if (sec == sections_.end())
    throw ConfigError(name_ + ": missing required section [" + section + "]");
  const auto it = sec->second.find(key);
  if (it == sec->second.end())
    throw ConfigError(name_ + ": missing required key '" + key + "' in [" + section + "]");
  return it->second;
}

bool TomlFile::has(const std::string& section, const std::string& key) const {
  const auto sec = sections_.find(section);
  return sec != sections_.end() && sec->second.count(key) > 0;
}

int64_t TomlFile::get_int(const std::string& section, const std::string& key) const {
  const auto& v = require(section, key);
  if (const auto* i = std::get_if<int64_t>(&v.value)) return *i;
  throw ConfigError(name_ + ":" + std::to_string(v.line) + ": key '" + key +
                    "' must be an integer");
}

double TomlFile::get_double(const std::string& section, const std::string& key) const {
  const auto& v = require(section, key);
  if (const auto* d = std::get_if<double>(&v.value)) return *d;
  if (const auto* i = std::get_if<int64_t>(&v.value)) return static_cast<double>(*i);
  throw ConfigError(name_ + ":" + std::to_string(v.line) + ": key '" + key +
                    "' must be a number");
}

bool TomlFile::get_bool(const std::string& section, const std::string& key) const {
  const auto& v = require(section, key);
  if (const auto* b = std::get_if<bool>(&v.value)) return *b;
  throw ConfigError(name_ + ":" + std::to_string(v.line) + ": key '" + key +
                    "' must be a boolean");
}

std::string TomlFile::get_string(const std::string& section, const std::string& key) const {
  const auto& v = require(section, key);
  if (const auto* s = std::get_if<std::string>(&v.value)) return *s;
  throw ConfigError(name_ + ":" + std::to_string(v.line) + ": key '" + key +
                    "' must be a string");
}

std::vector<double> TomlFile::get_double_array(const std::string& section,
                                               const std::string& key) const {
  const auto& v = require(section, key);
  if (const auto* d = std::get_if<std::vector<double>>(&v.value)) return *d;
  if (const auto* i = std::get_if<std::vector<int64_t>>(&v.value)) {
    std::vector<double> out(i->begin(), i->end());
    return out;
  }
  throw ConfigError(name_ + ":" + std::to_string(v.line) + ": key '" + key +
                    "' must be an array of numbers");
}

std::vector<int64_t> TomlFile::get_int_array(const std::string& section,
                                             const std::string& key) const {
  const auto& v = require(section, key);
  if (const auto* i = std::get_if<std::vector<int64_t>>(&v.value)) return *i;
  throw ConfigError(name_ + ":" + std::to_string(v.line) + ": key '" + key +
                    "' must be an array of integers");
}

int64_t TomlFile::get_int_or(const std::string& section, const std::string& key,
                             int64_t dflt) const {
  return has(section, key) ? get_int(section, key) : dflt;
}

double TomlFile::get_double_or(const std::string& section, const std::string& key,
                               double dflt) const {
  return has(section, key) ? get_double(section, key) : dflt;
}

std::vector<std::string> TomlFile::keys(const std::string& section) const {
  std::vector<std::string> out;
  const auto sec = sections_.find(section);
  if (sec == sections_.end()) return out;
  for (const auto& [key, value] : sec->second) out.push_back(key);
  return out;
}

RunConfig run_config_from_toml(const TomlFile& toml) {
  SymmetrySpec spec(static_cast<int>(toml.get_int("symmetry", "n")),
                    static_cast<int>(toml.get_int("symmetry", "W")),
                    toml.get_double("symmetry", "T"));
  PhysicalParams physics(toml.get_double_or("physics", "m", 1.0),
                         toml.get_double("physics", "alpha"), spec.n,
                         toml.get_double_or("physics", "Omega", 0.0));

  SolverConfig solver;
  solver.k_max = static_cast<int>(toml.get_int_or("solver", "K_max", solver.k_max));
  solver.grid_size = static_cast<int>(toml.get_int_or("solver", "grid_size", 0));
  solver.tol_residual = toml.get_double_or("solver", "tol_residual", solver.tol_residual);
  solver.max_iterations =
      static_cast<int>(toml.get_int_or("solver", "max_iterations", solver.max_iterations));
  solver.damping = toml.get_double_or("solver", "damping", solver.damping);
  if (toml.has("solver", "lambda_schedule"))
    solver.lambda_schedule = toml.get_double_array("solver", "lambda_schedule");
  solver.newton_fd_step =
      toml.get_double_or("solver", "newton_fd_step", solver.newton_fd_step);
  solver.rho_min = toml.get_double_or("solver", "rho_min", solver.rho_min);
  solver.r_cap = toml.get_double_or("solver", "R_cap", solver.r_cap);
  solver.validate();

  GuessSpec guess;
  const auto modes = toml.get_int_array("guess", "modes");
  const auto amps = toml.get_double_array("guess", "amplitudes");
  if (modes.size() != amps.size())
    throw ConfigError("[guess] modes and amplitudes must have equal length");
  for (size_t i = 0; i < modes.size(); ++i)
    guess.amplitudes[static_cast<int>(modes[i])] = amps[i];
  guess.jitter = toml.get_double_or("guess", "jitter", 0.0);

  RunConfig run{spec, physics, solver, guess, 0, {}};
  run.seed = static_cast<uint64_t>(toml.get_int_or("solver", "seed", 0));
  for (const auto& key : toml.keys("sweep"))
    run.sweep[key] = toml.get_double_array("sweep", key);
  return run;
}

RunConfig load_run_config(const std::string& path) {
  return run_config_from_toml(TomlFile::parse(io::read_text_file(path), path));
}

}  // namespace choreo::config
