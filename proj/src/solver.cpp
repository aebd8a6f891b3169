#include "choreo/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace choreo {

void SolverConfig::validate() const {
  if (k_max < 1) throw std::invalid_argument("SolverConfig: k_max must be >= 1");
  if (!(tol_residual > 0.0))
    throw std::invalid_argument("SolverConfig: tol_residual must be positive");
  if (max_iterations < 1)
    throw std::invalid_argument("SolverConfig: max_iterations must be >= 1");
  if (!(damping > 0.0 && damping <= 1.0))
    throw std::invalid_argument("SolverConfig: damping must lie in (0, 1]");
  if (lambda_schedule.empty())
    throw std::invalid_argument("SolverConfig: empty lambda schedule");
  for (size_t i = 0; i < lambda_schedule.size(); ++i) {
    const double l = lambda_schedule[i];
    if (!(l >= 0.0 && l <= 1.0))
      throw std::invalid_argument("SolverConfig: lambda outside [0, 1]");
    if (i > 0 && !(l > lambda_schedule[i - 1]))
      throw std::invalid_argument("SolverConfig: lambda schedule must be strictly ascending");
  }
  if (!(newton_fd_step > 0.0))
    throw std::invalid_argument("SolverConfig: newton_fd_step must be positive");
}

namespace solver {

namespace {

int solve_grid(const SolverConfig& config) {
  return dealiased_grid_size(config.k_max, config.grid_size);
}

// Reduced coordinates: the real scalar amplitudes on the admissible lattice.
struct ReducedSpace {
  std::vector<int> modes;
  double period;
  int k_max;

  Eigen::VectorXd pack(const FourierCurve& curve) const {
    Eigen::VectorXd x(modes.size());
    for (size_t i = 0; i < modes.size(); ++i)
      x[static_cast<Eigen::Index>(i)] = curve.scalar_coeff(modes[i]).real();
    return x;
  }

  FourierCurve unpack(const Eigen::VectorXd& x) const {
    std::map<int, Complex> coeffs;
    for (size_t i = 0; i < modes.size(); ++i)
      coeffs[modes[i]] = Complex(x[static_cast<Eigen::Index>(i)], 0.0);
    return FourierCurve::from_scalar_modes(period, k_max, coeffs);
  }
};

ReducedSpace reduced_space(const SymmetrySpec& spec, const SolverConfig& config) {
  ReducedSpace space;
  space.modes = symmetry::lattice_modes(spec.n, config.k_max);
  space.period = spec.period;
  space.k_max = config.k_max;
  if (space.modes.empty())
    throw std::invalid_argument("no admissible modes inside the configured band");
  return space;
}

// Pi_sym K (lambda N(u)) in reduced coordinates.
Eigen::VectorXd picard_map(const ReducedSpace& space, const Eigen::VectorXd& x,
                           const PhysicalParams& params, const SymmetrySpec& spec,
                           const SolverConfig& config, double lambda) {
  if (lambda == 0.0) return Eigen::VectorXd::Zero(x.size());
  const FourierCurve u = space.unpack(x);
  FourierCurve nu = dynamics::apply_N(u, params, spec, solve_grid(config), config.rho_min);
  nu *= lambda;
  const FourierCurve ku = spectral::apply_K(nu, params.Omega);
  return space.pack(symmetry::project_symmetry(ku, spec));
}

// Force coefficient of the instantaneous regular polygon: the interaction on
// a pure-mode circle of amplitude a is mu m a^{-(alpha+1)}.  Zero for even n
// (coincident copies).
double polygon_force_coefficient(int n, double alpha) {
  if (n % 2 == 0) return 0.0;
  double mu = 0.0;
  for (int k = 1; k < n; ++k) {
    const double chord = 2.0 * std::abs(std::sin(2.0 * std::numbers::pi * k / n));
    mu += 0.5 * std::pow(chord, -alpha);
  }
  return mu;
}

// Rescales the guess so its dominant lattice mode sits on the single-mode
// circle balance (omega j + Omega)^2 a = lambda mu m a^{-(alpha+1)}.  Pure
// balanced circles are fixed points of this preparation.
FourierCurve balance_rescale(const FourierCurve& u, const ReducedSpace& space,
                             const PhysicalParams& params, double lambda) {
  if (lambda <= 0.0) return u;
  const double mu = polygon_force_coefficient(params.n, params.alpha);
  if (mu <= 0.0) return u;
  int dominant = 0;
  double amp = 0.0;
  for (const int j : space.modes) {
    const double a = std::abs(u.scalar_coeff(j));
    if (a > amp) {
      amp = a;
      dominant = j;
    }
  }
  if (amp <= 0.0) return u;
  const double rate = u.omega() * dominant + params.Omega;
  if (rate == 0.0) return u;
  const double target =
      std::pow(lambda * mu * params.mass / (rate * rate), 1.0 / (params.alpha + 2.0));
  return (target / amp) * u;
}

void fill_diagnostics(const FourierCurve& curve, const PhysicalParams& params,
                      const SymmetrySpec& spec, const SolverConfig& config,
                      SolveReport& report) {
  report.h1_norm = curve.norm_h1();
  report.within_annulus =
      report.h1_norm > config.rho_min && report.h1_norm < config.r_cap;
  const int grid = spec.n * std::max(64, solve_grid(config) / spec.n);
  const Configuration configuration = dynamics::build_configuration(curve, spec, grid);
  report.min_separation = configuration.min_separation;
  const double rho = std::max(report.min_separation, config.rho_min);
  try {
    report.apriori_r0 = apriori_bound_R0(params, spec, rho, curve.omega());
  } catch (const HypothesisViolated&) {
    report.apriori_r0 = std::numeric_limits<double>::infinity();
  }
  try {
    report.winding = symmetry::winding_number(curve, 4096, 0.0);
  } catch (const Error&) {
    report.winding = 0;
  }
}

StageDiagnostics stage_diagnostics(const FourierCurve& curve,
                                   const PhysicalParams& params,
                                   const SymmetrySpec& spec, const SolverConfig& config,
                                   double lambda, int iterations, double residual) {
  StageDiagnostics diag;
  diag.lambda = lambda;
  diag.iterations = iterations;
  diag.residual = residual;
  diag.h1_norm = curve.norm_h1();
  diag.within_annulus = diag.h1_norm > config.rho_min && diag.h1_norm < config.r_cap;
  const double dot = curve.derivative_norm_l2(1);
  diag.kinetic_energy = dot * dot;
  const double omega = curve.omega();
  const double ratio = params.Omega / omega;
  if (std::abs(ratio) < 1.0 && !curve.is_zero()) {
    const int grid = spec.n * std::max(64, solve_grid(config) / spec.n);
    const double rho =
        std::max(dynamics::build_configuration(curve, spec, grid).min_separation,
                 config.rho_min);
    const double cu = params.mass * params.mass *
                      dynamics::potential_bound_CU(spec.n, params.alpha, rho);
    diag.kinetic_bound = params.alpha * cu / (1.0 - ratio * ratio);
  }
  return diag;
}

}  // namespace

FourierCurve initial_guess(const SymmetrySpec& spec,
                           const std::map<int, double>& amplitudes, int k_max) {
  std::map<int, Complex> modes;
  for (const auto& [k, amp] : amplitudes) {
    if (((k - 1) % spec.n + spec.n) % spec.n != 0) throw InadmissibleMode(k, spec.n);
    if (std::abs(k) > k_max)
      throw std::invalid_argument("initial_guess: mode outside the configured band");
    modes[k] = Complex(amp, 0.0);
  }
  return FourierCurve::from_scalar_modes(spec.period, k_max, modes);
}

RelativeEquilibrium relative_equilibrium(int n, double alpha, double mass,
                                         double radius, int k_max) {
  if (n < 3) throw std::invalid_argument("relative_equilibrium: n must be >= 3");
  if (n % 2 == 0) throw UnsupportedParity(n);
  if (!(radius > 0.0))
    throw std::invalid_argument("relative_equilibrium: radius must be positive");

  // Central acceleration on body 0 of the polygon, by direct summation.
  const double two_pi = 2.0 * std::numbers::pi;
  Complex acc{};
  const Complex z0(radius, 0.0);
  for (int b = 1; b < n; ++b) {
    const Complex w = std::polar(radius, 2.0 * two_pi * b / n);
    const Complex d = w - z0;
    acc += mass * d / std::pow(std::abs(d), alpha + 2.0);
  }
  const double pull = std::abs(acc);  // = mu m / r^{alpha+1}

  // Polygon rotation rate from the balance s^2 r = pull; the generator circles
  // at omega = 2 s in a frame counter-rotating at s, so the period is pi / s.
  const double s_ref = std::sqrt(pull / radius);
  const double omega = 2.0 * s_ref;
  const double period = two_pi / omega;

  // 1-d root solve of g(Omega) = (omega + Omega)^2 r - pull on (-omega, 0);
  // g is increasing there and brackets the balance.
  double lo = -omega, hi = 0.0;
  auto g = [&](double Om) { return (omega + Om) * (omega + Om) * radius - pull; };
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) < 0.0) lo = mid; else hi = mid;
  }
  const double Omega = 0.5 * (lo + hi);

  FourierCurve curve(period, k_max);
  curve.set_scalar_pair(1, Complex(radius, 0.0), Complex{});
  return {curve, Omega};
}

FourierCurve fixed_point_step(const FourierCurve& u, const PhysicalParams& params,
                              const SymmetrySpec& spec, double lambda,
                              const SolverConfig& config) {
  config.validate();
  FourierCurve next = (1.0 - config.damping) * u;
  if (lambda != 0.0) {
    FourierCurve nu = dynamics::apply_N(u, params, spec, solve_grid(config), config.rho_min);
    nu *= lambda;
    FourierCurve ku = symmetry::project_symmetry(spectral::apply_K(nu, params.Omega), spec);
    ku *= config.damping;
    next += ku;
  }
  return next;
}

std::pair<FourierCurve, SolveReport> newton_solve(const FourierCurve& u0,
                                                  const PhysicalParams& params,
                                                  const SymmetrySpec& spec,
                                                  const SolverConfig& config,
                                                  double lambda) {
  config.validate();
  const ReducedSpace space = reduced_space(spec, config);
  const double sqrt_t = std::sqrt(spec.period);

  Eigen::VectorXd x = space.pack(symmetry::project_symmetry(u0, spec));
  const auto dim = x.size();

  SolveReport report;
  auto residual = [&](const Eigen::VectorXd& y) -> Eigen::VectorXd {
    return y - picard_map(space, y, params, spec, config, lambda);
  };

  Eigen::VectorXd r = residual(x);
  double res_norm = sqrt_t * r.norm();
  report.residual_history.push_back(res_norm);

  const double target = config.tol_residual;
  const double polish = std::max(1e-3 * target, 1e-13);

  while (report.iterations < config.max_iterations && res_norm > polish) {
    // Forward-difference Jacobian, one interaction evaluation per direction.
    const double scale = std::max(x.cwiseAbs().maxCoeff(), 1e-8);
    const double h = config.newton_fd_step * scale;
    Eigen::MatrixXd jac(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      Eigen::VectorXd xp = x;
      xp[i] += h;
      jac.col(i) = (residual(xp) - r) / h;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(jac);
    if (!lu.isInvertible())
      throw SingularJacobian("Newton Jacobian is singular (near a bifurcation?)");
    const Eigen::VectorXd step = lu.solve(r);

    const Eigen::VectorXd x_next = x - step;
    const Eigen::VectorXd r_next = residual(x_next);
    const double res_next = sqrt_t * r_next.norm();
    ++report.iterations;
    if (res_next >= res_norm && res_norm <= target) break;  // converged; keep the better iterate
    x = x_next;
    r = r_next;
    res_norm = res_next;
    report.residual_history.push_back(res_norm);
  }

  report.final_residual_l2 = res_norm;
  report.converged = res_norm < target;

  FourierCurve curve = space.unpack(x);
  fill_diagnostics(curve, params, spec, config, report);
  return {std::move(curve), std::move(report)};
}

std::pair<FourierCurve, SolveReport> homotopy_continuation(const FourierCurve& u0,
                                                           const PhysicalParams& params,
                                                           const SymmetrySpec& spec,
                                                           const SolverConfig& config) {
  config.validate();
  if (std::abs(config.lambda_schedule.back() - 1.0) > 0.0)
    throw std::invalid_argument("homotopy schedule must end at lambda = 1");

  const ReducedSpace space = reduced_space(spec, config);
  FourierCurve u = symmetry::project_symmetry(u0, spec);

  SolveReport report;
  double lambda_prev = 1.0;
  for (size_t stage = 0; stage < config.lambda_schedule.size(); ++stage) {
    const double lambda = config.lambda_schedule[stage];

    // Solutions of L u = lambda N(u) scale as lambda^{1/(alpha+2)} times the
    // lambda = 1 branch; rescale the warm start accordingly.
    if (lambda > 0.0 && lambda_prev > 0.0 && lambda != lambda_prev)
      u *= std::pow(lambda / lambda_prev, 1.0 / (params.alpha + 2.0));

    if (stage == 0 && lambda > 0.0 && !u.is_zero()) {
      // Amplitude rescaling of the stage guess, skipped when the guess is
      // already near a fixed point.
      const Eigen::VectorXd x = space.pack(u);
      double r1 = std::numeric_limits<double>::infinity();
      try {
        r1 = (x - picard_map(space, x, params, spec, config, lambda)).norm() *
             std::sqrt(spec.period);
      } catch (const CollisionProximity&) {
      }
      if (r1 > 1e-3 * u.norm_l2()) u = balance_rescale(u, space, params, lambda);
    }

    SolveReport stage_report;
    FourierCurve stage_curve(u.period(), u.k_max());
    bool ok = false;
    for (int attempt = 0; attempt < 2 && !ok; ++attempt) {
      if (attempt == 1) u = balance_rescale(u, space, params, lambda);
      try {
        auto [curve, rep] = newton_solve(u, params, spec, config, lambda);
        ok = rep.converged;
        if (ok || attempt == 1) {
          stage_report = std::move(rep);
          stage_curve = std::move(curve);
        }
      } catch (const Error& err) {
        if (attempt == 1) throw StageFailed(lambda, err.what());
      }
    }
    if (!ok)
      throw StageFailed(lambda, "stage residual " +
                                    std::to_string(stage_report.final_residual_l2) +
                                    " above tolerance");
    u = std::move(stage_curve);

    report.stages.push_back(stage_diagnostics(u, params, spec, config, lambda,
                                              stage_report.iterations,
                                              stage_report.final_residual_l2));
    report.iterations += stage_report.iterations;
    if (stage + 1 == config.lambda_schedule.size()) {
      report.converged = stage_report.converged;
      report.final_residual_l2 = stage_report.final_residual_l2;
      report.residual_history = std::move(stage_report.residual_history);
      report.min_separation = stage_report.min_separation;
      report.winding = stage_report.winding;
      report.h1_norm = stage_report.h1_norm;
      report.apriori_r0 = stage_report.apriori_r0;
      report.within_annulus = stage_report.within_annulus;
    }
    lambda_prev = lambda;
  }
  return {std::move(u), std::move(report)};
}

double apriori_bound_R0(const PhysicalParams& params, const SymmetrySpec& spec,
                        double rho, double omega) {
  if (!(rho > 0.0)) throw std::invalid_argument("apriori_bound_R0: rho must be positive");
  const double c = spectral::coercivity_constant(omega, params.Omega);
  const double cu = params.mass * params.mass *
                    dynamics::potential_bound_CU(spec.n, params.alpha, rho);
  return std::sqrt(params.alpha * cu / c) * std::sqrt(1.0 + 1.0 / (omega * omega));
}

}  // namespace solver
}  // namespace choreo
