#pragma once

#include <vector>

#include "choreo/errors.hpp"
#include "choreo/fourier_curve.hpp"
#include "choreo/symmetry.hpp"

namespace choreo {

/// Equal masses m, homogeneous potential exponent alpha in (0, 2), body count
/// and rotating-frame angular velocity.
struct PhysicalParams {
  double mass;
  double alpha;
  int n;
  double Omega;

  PhysicalParams(double mass_, double alpha_, int n_, double Omega_);
};

/// n body trajectories sampled on a uniform grid over one period.
struct Configuration {
  int n = 0;
  double period = 0.0;
  std::vector<double> times;                  // M entries
  std::vector<std::vector<Vec2>> positions;   // n x M
  double min_separation = 0.0;

  int grid_size() const { return static_cast<int>(times.size()); }
};

namespace dynamics {

inline constexpr double kDefaultRhoMin = 1e-6;

/// Interaction operator sampled pseudo-spectrally and truncated to the
/// curve's bandwidth:
///   (N u)(t) = sum_{k=1}^{n-1} m (u(t) - R_{2 pi k/n} u(t + k T/n)) / |...|^{alpha+2}.
/// Time shifts are applied exactly in coefficient space.  Throws
/// CollisionProximity when any generator/copy separation drops below rho_min.
FourierCurve apply_N(const FourierCurve& curve, const PhysicalParams& params,
                     const SymmetrySpec& spec, int grid_size,
                     double rho_min = kDefaultRhoMin);

/// U = sum_{i<j} m^2 / |q_i - q_j|^alpha at one time sample.
double potential_U(const Configuration& config, const PhysicalParams& params,
                   int t_index);

/// C_U = n (n-1) / (2 rho^alpha)  (m = 1 normalization).
double potential_bound_CU(int n, double alpha, double rho);

/// sum_i <F_i, q_i> with F_i the per-mass Newton force (acceleration); equals
/// -U/m for the homogeneous interaction.
double force_position_pairing(const Configuration& config,
                              const PhysicalParams& params, int t_index);

struct ResidualReport {
  FourierCurve curve;  // band-limited projection of the residual
  double l2 = 0.0;
  double sup = 0.0;
};

/// r(t) = u'' + 2 Omega J u' - Omega^2 u - (force sum); identically zero on a
/// choreography generator.
ResidualReport physical_residual(const FourierCurve& curve,
                                 const PhysicalParams& params,
                                 const SymmetrySpec& spec, int grid_size,
                                 double rho_min = kDefaultRhoMin);

/// q_i(t_j) = R_{2 pi i / n} u(t_j + i T / n) with exact spectral shifts.
Configuration build_configuration(const FourierCurve& curve,
                                  const SymmetrySpec& spec, int grid_size);

/// Sample-wise q = R_{Omega t} x.
Configuration rotating_to_inertial(const Configuration& config, double Omega);

double min_separation(const Configuration& config);

struct LipschitzProbe {
  double ratio;   // ||N(u) - N(v)||_L2 / ||u - v||_C0
  double bound;   // C rho^{-(alpha+2)}
  double rho;     // observed common separation floor
};

LipschitzProbe lipschitz_estimate(const FourierCurve& u, const FourierCurve& v,
                                  const PhysicalParams& params,
                                  const SymmetrySpec& spec, int grid_size = 0);

struct PairingReport {
  double generator_pairing;            // <N(u), u>_L2 over the generator
  double configuration_pairing_mean;   // time average of sum_i <F_i, q_i>
};

/// Reports both pairing numbers without asserting a relation between them.
PairingReport pairing_report(const FourierCurve& curve, const PhysicalParams& params,
                             const SymmetrySpec& spec, int grid_size);

}  // namespace dynamics
}  // namespace choreo
