#pragma once

#include "choreo/dynamics.hpp"
#include "choreo/fourier_curve.hpp"
#include "choreo/symmetry.hpp"

namespace choreo {

struct OdeOracleResult {
  double period_return_error = 0.0;
  double energy_drift = 0.0;    // relative to |E(0)|
  double momentum_drift = 0.0;  // relative to |L(0)| (absolute if L(0) ~ 0)
  double min_separation = 0.0;  // along the integrated trajectories
  Configuration rotating;       // integrated trajectories, rotating frame
  Configuration inertial;
  int steps = 0;
};

namespace verify {

/// Max relative deviation between apply_L and a central-difference evaluation
/// of -u'' - 2 Omega J u' + Omega^2 u on a uniform grid (fd_order 2 or 4).
double fd_operator_oracle(const FourierCurve& curve, double Omega, int grid_size,
                          int fd_order);

/// Integrates the inertial n-body equations over one period from initial
/// conditions generated by the curve, with an adaptive embedded RK5(4) pair
/// and dense output.  Reports the return error against the rotated initial
/// configuration and the conservation drifts.
OdeOracleResult ode_oracle(const FourierCurve& curve, const PhysicalParams& params,
                           const SymmetrySpec& spec, double integrator_tol,
                           int samples = 0, double rho_min = dynamics::kDefaultRhoMin);

/// max over bodies and grid times of |q_i(t) - R_{2 pi i/n} q_0(t + i T/n)|.
/// The grid size must be divisible by n so the shifts are grid-aligned.
double choreography_check(const Configuration& config, const SymmetrySpec& spec);

/// Total inertial energy of a state (positions, velocities), with the
/// potential normalized so its gradient reproduces the Newton force.
double total_energy(const std::vector<Vec2>& q, const std::vector<Vec2>& v,
                    const PhysicalParams& params);
double total_angular_momentum(const std::vector<Vec2>& q, const std::vector<Vec2>& v,
                              double mass);

}  // namespace verify
}  // namespace choreo
