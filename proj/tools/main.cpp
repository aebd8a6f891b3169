#include <cstdint>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "choreo/config.hpp"
#include "choreo/errors.hpp"
#include "choreo/run.hpp"

namespace {

std::map<int, double> parse_amplitudes(const std::vector<int>& modes,
                                       const std::vector<double>& amps) {
  if (modes.size() != amps.size())
    throw choreo::ConfigError("--modes and --amps must have equal length");
  std::map<int, double> out;
  for (size_t i = 0; i < modes.size(); ++i) out[modes[i]] = amps[i];
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral solver and verification suite for dihedral n-body choreographies"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".", solution_path;
  uint64_t seed = 0;
  int workers = 1;

  auto* solve_cmd = app.add_subcommand("solve", "Solve for a choreography generator");
  solve_cmd->add_option("--config", config_path, "TOML config file")->required();
  solve_cmd->add_option("--out", out_dir, "Output directory");
  solve_cmd->add_option("--seed", seed, "Seed for guess jitter");

  auto* verify_cmd = app.add_subcommand("verify", "Run the independent oracles on a solution");
  verify_cmd->add_option("--solution", solution_path, "solution.json produced by solve")
      ->required();
  verify_cmd->add_option("--out", out_dir, "Output directory for verification.json");

  int gallery_n = 0, gallery_w = 0;
  std::vector<int> modes;
  std::vector<double> amps;
  bool gallery = false;
  auto* curves_cmd = app.add_subcommand("curves", "Render admissible generating curves as SVG");
  curves_cmd->add_option("--n", gallery_n, "Body count");
  curves_cmd->add_option("--w", gallery_w, "Winding number");
  curves_cmd->add_option("--modes", modes, "Scalar mode indices")->delimiter(',');
  curves_cmd->add_option("--amps", amps, "Amplitudes for --modes")->delimiter(',');
  curves_cmd->add_flag("--gallery", gallery, "Render the six preset pairs");
  curves_cmd->add_option("--out", out_dir, "Output directory");

  auto* sweep_cmd = app.add_subcommand("sweep", "Run a parameter sweep");
  sweep_cmd->add_option("--config", config_path, "TOML config file with a [sweep] section")
      ->required();
  sweep_cmd->add_option("--out", out_dir, "Output directory");
  sweep_cmd->add_option("--workers", workers, "Concurrent solves");
  sweep_cmd->add_option("--seed", seed, "Seed for guess jitter");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve_cmd->parsed()) {
      const auto cfg = choreo::config::load_run_config(config_path);
      const auto artifacts = choreo::run::solve(cfg, out_dir, seed);
      std::cout << (artifacts.report.converged ? "converged" : "not converged")
                << ": residual " << artifacts.report.final_residual_l2 << ", winding "
                << artifacts.report.winding << ", min separation "
                << artifacts.report.min_separation << "\n"
                << "wrote " << artifacts.solution_path << "\n";
      return artifacts.report.converged ? 0 : 1;
    }
    if (verify_cmd->parsed()) {
      const auto outcome = choreo::run::verify(solution_path, out_dir);
      for (const auto& check : outcome.report.at("checks"))
        std::cout << (check.at("pass").get<bool>() ? "[pass] " : "[FAIL] ")
                  << check.at("name").get<std::string>() << " = " << check.at("value")
                  << "\n";
      return outcome.pass ? 0 : 2;
    }
    if (curves_cmd->parsed()) {
      if (gallery) {
        for (const auto& path : choreo::run::curves_gallery(out_dir))
          std::cout << "wrote " << path << "\n";
      } else {
        if (gallery_n == 0 || gallery_w == 0)
          throw choreo::ConfigError("curves requires --n and --w (or --gallery)");
        std::cout << "wrote "
                  << choreo::run::curves(gallery_n, gallery_w,
                                         parse_amplitudes(modes, amps), out_dir)
                  << "\n";
      }
      return 0;
    }
    if (sweep_cmd->parsed()) {
      auto cfg = choreo::config::load_run_config(config_path);
      if (seed != 0) cfg.seed = seed;
      std::cout << "wrote " << choreo::run::sweep(cfg, out_dir, workers) << "\n";
      return 0;
    }
  } catch (const choreo::Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 3;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 3;
  }
  return 0;
}
