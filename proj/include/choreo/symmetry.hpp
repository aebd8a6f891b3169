#pragma once

#include <functional>
#include <vector>

#include "choreo/errors.hpp"
#include "choreo/fourier_curve.hpp"

namespace choreo {

/// Body count n, winding number W and period T of the dihedral action.
struct SymmetrySpec {
  int n;
  int w;
  double period;

  SymmetrySpec(int n_, int w_, double period_);
  bool is_choreography() const;  // gcd(W, n) == 1
  double omega() const;
};

struct OrbitDecomposition {
  int d;            // gcd(W, n)
  int orbit_count;  // == d
  int orbit_size;   // == n / d
  std::vector<std::vector<int>> orbits;
};

namespace symmetry {

/// Counterclockwise rotation by `angle`.
Mat2 rotation(double angle);

/// J = rotation by pi/2 and the reflection S = diag(1, -1).
Mat2 j_matrix();
Mat2 s_matrix();

/// Orbits of the body permutation j -> j + W (mod n), collected by iteration.
OrbitDecomposition orbit_decomposition(int n, int w);

/// Scalar mode lattice { k = 1 + l n : l in [l_min, l_max] }, ascending.
std::vector<int> admissible_modes(const SymmetrySpec& spec, int l_min, int l_max);

/// All admissible scalar modes with |k| <= k_max, ascending.
std::vector<int> lattice_modes(int n, int k_max);

/// Orthogonal projection onto the dihedral subspace: scalar modes with
/// k = 1 (mod n) survive and are reflection-symmetrized (a_k -> Re a_k).
FourierCurve project_symmetry(const FourierCurve& curve, const SymmetrySpec& spec);

/// Turns of the curve around the origin over one period, by angle unwrapping
/// with adaptive grid refinement (doubling, capped at 2^20 samples).
int winding_number(const FourierCurve& curve, int grid_size, double eps_radius);

/// rho_0 = 2 r_* sin(pi / n).
double separation_lower_bound(int n, double r_star);

/// 2 rho(W t) sin(pi k / n) for a radial profile rho (2 pi / n periodic, even).
double pairwise_separation_exact(const std::function<double(double)>& rho, int n,
                                 int w, int body, double t);

}  // namespace symmetry
}  // namespace choreo
