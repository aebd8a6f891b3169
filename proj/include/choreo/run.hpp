#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "choreo/config.hpp"
#include "choreo/solver.hpp"

namespace choreo::run {

struct SolveArtifacts {
  SolveReport report;
  FourierCurve curve;
  std::string solution_path;
  std::string report_path;
};

/// Runs the configured solve (homotopy when the schedule has several stages,
/// plain Newton otherwise) and writes solution.json, report.json and the
/// rotating/inertial trajectory CSVs into out_dir.
SolveArtifacts solve(const config::RunConfig& cfg, const std::string& out_dir,
                     uint64_t seed_override = 0);

struct VerificationOutcome {
  bool pass = true;
  nlohmann::json report;
};

/// Runs the independent oracles on a solution file and writes
/// verification.json next to it (or into out_dir when given).
VerificationOutcome verify(const std::string& solution_path, const std::string& out_dir);

/// Renders one admissible generating curve as SVG; returns the file path.
std::string curves(int n, int w, const std::map<int, double>& amplitudes,
                   const std::string& out_dir);

/// The preset gallery pairs (n, W).
const std::vector<std::pair<int, int>>& gallery_pairs();
std::vector<std::string> curves_gallery(const std::string& out_dir);

/// Cartesian sweep over the [sweep] axes; one CSV row per run, merged in
/// deterministic order.  Returns the CSV path.
std::string sweep(const config::RunConfig& cfg, const std::string& out_dir, int workers);

}  // namespace choreo::run
