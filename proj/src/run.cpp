#include "choreo/run.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "choreo/io.hpp"
#include "choreo/verify.hpp"

namespace choreo::run {

namespace fs = std::filesystem;
using io::json;

namespace {

FourierCurve build_guess(const config::RunConfig& cfg, uint64_t seed) {
  FourierCurve guess =
      solver::initial_guess(cfg.symmetry, cfg.guess.amplitudes, cfg.solver.k_max);
  if (cfg.guess.jitter > 0.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, cfg.guess.jitter);
    std::map<int, Complex> modes;
    for (const auto& [k, amp] : cfg.guess.amplitudes)
      modes[k] = Complex(amp * (1.0 + noise(rng)), 0.0);
    guess = FourierCurve::from_scalar_modes(cfg.symmetry.period, cfg.solver.k_max, modes);
  }
  return guess;
}

void check_solvable(const config::RunConfig& cfg) {
  const int bad = spectral::first_resonant_mode(cfg.symmetry.omega(), cfg.physics.Omega,
                                                cfg.solver.k_max);
  if (bad != 0)
    throw ResonantMode(bad, std::min(std::abs(cfg.symmetry.omega() * bad - cfg.physics.Omega),
                                     std::abs(cfg.symmetry.omega() * bad + cfg.physics.Omega)));
}

json run_row(const config::RunConfig& cfg, const SolveReport& report) {
  return json{{"n", cfg.symmetry.n},
              {"W", cfg.symmetry.w},
              {"alpha", cfg.physics.alpha},
              {"m", cfg.physics.mass},
              {"Omega", cfg.physics.Omega},
              {"K_max", cfg.solver.k_max},
              {"converged", report.converged},
              {"final_residual_L2", report.final_residual_l2},
              {"min_separation", report.min_separation},
              {"winding", report.winding},
              {"h1_norm", report.h1_norm},
              {"apriori_R0", report.apriori_r0}};
}

}  // namespace

SolveArtifacts solve(const config::RunConfig& cfg, const std::string& out_dir,
                     uint64_t seed_override) {
  fs::create_directories(out_dir);
  check_solvable(cfg);
  const uint64_t seed = seed_override != 0 ? seed_override : cfg.seed;
  const FourierCurve guess = build_guess(cfg, seed);

  FourierCurve curve(cfg.symmetry.period, cfg.solver.k_max);
  SolveReport report;
  if (cfg.solver.lambda_schedule.size() == 1 &&
      cfg.solver.lambda_schedule.front() == 1.0) {
    std::tie(curve, report) =
        solver::newton_solve(guess, cfg.physics, cfg.symmetry, cfg.solver);
  } else {
    std::tie(curve, report) =
        solver::homotopy_continuation(guess, cfg.physics, cfg.symmetry, cfg.solver);
  }

  SolveArtifacts artifacts{report, curve, "", ""};
  artifacts.solution_path = (fs::path(out_dir) / "solution.json").string();
  artifacts.report_path = (fs::path(out_dir) / "report.json").string();

  io::write_json_file(artifacts.solution_path,
                      io::solution_to_json(curve, cfg.symmetry, cfg.physics));
  json report_json = io::report_to_json(report);
  report_json["seed"] = seed;
  io::write_json_file(artifacts.report_path, report_json);

  const int grid = cfg.symmetry.n * 256;
  const Configuration rotating = dynamics::build_configuration(curve, cfg.symmetry, grid);
  const Configuration inertial = dynamics::rotating_to_inertial(rotating, cfg.physics.Omega);
  io::write_text_file((fs::path(out_dir) / "trajectory_rotating.csv").string(),
                      io::configuration_to_csv(rotating));
  io::write_text_file((fs::path(out_dir) / "trajectory_inertial.csv").string(),
                      io::configuration_to_csv(inertial));
  return artifacts;
}

VerificationOutcome verify(const std::string& solution_path, const std::string& out_dir) {
  const io::Solution sol = io::solution_from_json(io::read_json_file(solution_path));

  VerificationOutcome outcome;
  json checks = json::array();
  auto check = [&](const std::string& name, double value, double threshold) {
    const bool ok = value < threshold;
    checks.push_back(
        {{"name", name}, {"value", value}, {"threshold", threshold}, {"pass", ok}});
    outcome.pass = outcome.pass && ok;
  };

  const auto residual =
      dynamics::physical_residual(sol.curve, sol.params, sol.spec, 0);
  check("physical_residual_sup", residual.sup, 1e-7);

  const double fd_dev = verify::fd_operator_oracle(
      sol.curve, sol.params.Omega, 8 * (2 * sol.curve.k_max() + 1), 4);
  outcome.report["fd_operator_deviation"] = fd_dev;

  const auto ode = verify::ode_oracle(sol.curve, sol.params, sol.spec, 1e-12);
  check("period_return_error", ode.period_return_error, 1e-5);
  check("energy_drift", ode.energy_drift, 1e-8);
  check("momentum_drift", ode.momentum_drift, 1e-8);
  const double choreo_dev = verify::choreography_check(ode.rotating, sol.spec);
  check("choreography_deviation", choreo_dev, 1e-5);

  const int winding = symmetry::winding_number(sol.curve, 4096, 0.0);
  checks.push_back({{"name", "winding_matches_W"},
                    {"value", winding},
                    {"threshold", sol.spec.w},
                    {"pass", winding == sol.spec.w}});
  outcome.pass = outcome.pass && winding == sol.spec.w;

  const FourierCurve projected = symmetry::project_symmetry(sol.curve, sol.spec);
  check("symmetry_defect", (projected - sol.curve).norm_l2(), 1e-10);

  outcome.report["checks"] = checks;
  outcome.report["pass"] = outcome.pass;
  outcome.report["min_separation"] = ode.min_separation;
  outcome.report["integrator_steps"] = ode.steps;
  const auto pairing = dynamics::pairing_report(sol.curve, sol.params, sol.spec, 0);
  outcome.report["generator_pairing"] = pairing.generator_pairing;
  outcome.report["configuration_pairing_mean"] = pairing.configuration_pairing_mean;

  fs::path dir = out_dir.empty() ? fs::path(solution_path).parent_path() : fs::path(out_dir);
  if (!dir.empty()) fs::create_directories(dir);
  io::write_json_file((dir / "verification.json").string(), outcome.report);
  return outcome;
}

std::string curves(int n, int w, const std::map<int, double>& amplitudes,
                   const std::string& out_dir) {
  const SymmetrySpec spec(n, w, 2.0 * std::numbers::pi);
  std::map<int, double> amps = amplitudes;
  if (amps.empty()) {
    amps[w] = 1.0;
    if (w != 1) amps[1] = 0.3;
  }
  const int k_max = std::max(64, 2 * std::abs(w));
  const FourierCurve curve = solver::initial_guess(spec, amps, k_max);
  fs::create_directories(out_dir);
  const std::string path =
      (fs::path(out_dir) / ("curve_n" + std::to_string(n) + "_w" + std::to_string(w) + ".svg"))
          .string();
  io::write_text_file(path, io::curve_to_svg(curve, n));
  return path;
}

const std::vector<std::pair<int, int>>& gallery_pairs() {
  static const std::vector<std::pair<int, int>> pairs = {
      {3, 4}, {4, 5}, {5, 6}, {5, 11}, {6, 13}, {7, 22}};
  return pairs;
}

std::vector<std::string> curves_gallery(const std::string& out_dir) {
  std::vector<std::string> paths;
  for (const auto& [n, w] : gallery_pairs()) paths.push_back(curves(n, w, {}, out_dir));
  return paths;
}

std::string sweep(const config::RunConfig& cfg, const std::string& out_dir, int workers) {
  fs::create_directories(out_dir);

  // Cartesian product of the sweep axes, in deterministic key/value order.
  std::vector<config::RunConfig> jobs{cfg};
  for (const auto& [key, values] : cfg.sweep) {
    std::vector<config::RunConfig> expanded;
    for (const auto& job : jobs) {
      for (const double v : values) {
        config::RunConfig next = job;
        if (key == "alpha")
          next.physics = PhysicalParams(job.physics.mass, v, job.physics.n,
                                        job.physics.Omega);
        else if (key == "Omega")
          next.physics = PhysicalParams(job.physics.mass, job.physics.alpha,
                                        job.physics.n, v);
        else if (key == "m")
          next.physics = PhysicalParams(v, job.physics.alpha, job.physics.n,
                                        job.physics.Omega);
        else
          throw ConfigError("unsupported sweep axis '" + key + "'");
        expanded.push_back(std::move(next));
      }
    }
    jobs = std::move(expanded);
  }

  std::vector<json> rows(jobs.size());
  std::atomic<size_t> cursor{0};
  auto work = [&]() {
    while (true) {
      const size_t i = cursor.fetch_add(1);
      if (i >= jobs.size()) return;
      json row;
      try {
        const FourierCurve guess = build_guess(jobs[i], jobs[i].seed);
        auto [curve, report] = jobs[i].solver.lambda_schedule.size() == 1
                                   ? solver::newton_solve(guess, jobs[i].physics,
                                                          jobs[i].symmetry, jobs[i].solver)
                                   : solver::homotopy_continuation(
                                         guess, jobs[i].physics, jobs[i].symmetry,
                                         jobs[i].solver);
        row = run_row(jobs[i], report);
      } catch (const Error& err) {
        row = run_row(jobs[i], SolveReport{});
        std::string what = err.what();
        std::replace(what.begin(), what.end(), ',', ';');
        row["error"] = what;
      }
      rows[i] = std::move(row);
    }
  };
  const int count = std::max(1, std::min<int>(workers, static_cast<int>(jobs.size())));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) pool.emplace_back(work);
  for (auto& th : pool) th.join();

  std::ostringstream csv;
  csv.precision(17);
  csv << "n,W,alpha,m,Omega,K_max,converged,final_residual_L2,min_separation,winding,"
         "h1_norm,apriori_R0,error\n";
  for (const auto& row : rows) {
    csv << row.at("n").get<int>() << ',' << row.at("W").get<int>() << ','
        << row.at("alpha").get<double>() << ',' << row.at("m").get<double>() << ','
        << row.at("Omega").get<double>() << ',' << row.at("K_max").get<int>() << ','
        << (row.at("converged").get<bool>() ? 1 : 0) << ','
        << row.at("final_residual_L2").get<double>() << ','
        << row.at("min_separation").get<double>() << ',' << row.at("winding").get<int>()
        << ',' << row.at("h1_norm").get<double>() << ','
        << row.at("apriori_R0").get<double>() << ','
        << (row.contains("error") ? row.at("error").get<std::string>() : "") << '\n';
  }
  const std::string path = (fs::path(out_dir) / "sweep.csv").string();
  io::write_text_file(path, csv.str());
  return path;
}

}  // namespace choreo::run
