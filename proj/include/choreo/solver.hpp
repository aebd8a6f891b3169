#pragma once

#include <map>
#include <utility>
#include <vector>

#include "choreo/dynamics.hpp"
#include "choreo/fourier_curve.hpp"
#include "choreo/spectral.hpp"
#include "choreo/symmetry.hpp"

namespace choreo {

struct SolverConfig {
  int k_max = 64;
  int grid_size = 0;  // 0 -> dealiased power-of-two default
  double tol_residual = 1e-10;
  int max_iterations = 40;
  double damping = 1.0;
  std::vector<double> lambda_schedule = {1.0};
  double newton_fd_step = 1e-6;
  double rho_min = dynamics::kDefaultRhoMin;
  double r_cap = 100.0;

  void validate() const;
};

struct StageDiagnostics {
  double lambda = 1.0;
  int iterations = 0;
  double residual = 0.0;
  double h1_norm = 0.0;
  bool within_annulus = false;
  double kinetic_energy = 0.0;  // ||u'||_L2^2
  double kinetic_bound = 0.0;   // alpha C_U / (1 - Omega^2/omega^2)
};

struct SolveReport {
  bool converged = false;
  int iterations = 0;
  std::vector<double> residual_history;
  double final_residual_l2 = 0.0;
  double min_separation = 0.0;
  int winding = 0;
  double h1_norm = 0.0;
  double apriori_r0 = 0.0;
  bool within_annulus = false;
  std::vector<StageDiagnostics> stages;
};

namespace solver {

/// Real symmetric curve with the given scalar-mode amplitudes (modes must lie
/// on the lattice k = 1 mod n; amplitudes are real, reflection-compatible).
FourierCurve initial_guess(const SymmetrySpec& spec,
                           const std::map<int, double>& amplitudes, int k_max = 64);

struct RelativeEquilibrium {
  FourierCurve curve;
  double Omega;
};

/// Circular generator of the rotating regular polygon (odd n) together with
/// the frame rate at which it is stationary in the physical equation.  The
/// polygon force sum is computed by direct summation and the rate by 1-d
/// root solving on the radial balance.
RelativeEquilibrium relative_equilibrium(int n, double alpha, double mass,
                                         double radius, int k_max = 16);

/// u_next = (1 - damping) u + damping Pi_sym K(lambda N(u)).
FourierCurve fixed_point_step(const FourierCurve& u, const PhysicalParams& params,
                              const SymmetrySpec& spec, double lambda,
                              const SolverConfig& config);

/// Newton iteration on x - Pi_sym K(lambda N(u(x))) over the reduced real
/// coefficients of the admissible lattice; dense FD Jacobian.
std::pair<FourierCurve, SolveReport> newton_solve(const FourierCurve& u0,
                                                  const PhysicalParams& params,
                                                  const SymmetrySpec& spec,
                                                  const SolverConfig& config,
                                                  double lambda = 1.0);

/// Solves L u = lambda N(u) along the schedule, warm-starting each stage from
/// the previous solution rescaled by the interaction homogeneity.
std::pair<FourierCurve, SolveReport> homotopy_continuation(const FourierCurve& u0,
                                                           const PhysicalParams& params,
                                                           const SymmetrySpec& spec,
                                                           const SolverConfig& config);

/// R0 = sqrt(alpha C_U / c) sqrt(1 + 1/omega^2), C_U = m^2 n(n-1)/(2 rho^alpha).
double apriori_bound_R0(const PhysicalParams& params, const SymmetrySpec& spec,
                        double rho, double omega);

}  // namespace solver
}  // namespace choreo
