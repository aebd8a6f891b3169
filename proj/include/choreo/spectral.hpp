#pragma once

#include <utility>
#include <vector>

#include "choreo/errors.hpp"
#include "choreo/fourier_curve.hpp"

namespace choreo {

/// Symbol of L on one Fourier mode: A_k = (w k)^2 I - 2 i w k Omega J + Omega^2 I
/// with eigenvalues lambda_pm = (w k -+ Omega)^2 on the circular polarizations.
struct ModeMatrix {
  int k;
  Mat2c matrix;
  double lambda_plus;
  double lambda_minus;
};

struct NonresonanceReport {
  bool ok = true;
  std::vector<int> offending;
};

namespace spectral {

/// Default resonance tolerance, relative to omega.
inline constexpr double kResonanceTolRel = 1e-9;

ModeMatrix mode_matrix(int k, double omega, double Omega);

/// Projectors onto the circular polarizations v_pm = (1, +-i)/sqrt(2):
/// P_pm = (I +- i J)/2.  They satisfy S P_pm S = P_mp.
std::pair<Mat2c, Mat2c> spectral_projectors();

/// L u = -u'' - 2 Omega J u' + Omega^2 u, mode-diagonal.
FourierCurve apply_L(const FourierCurve& curve, double Omega);

/// K = L^{-1}; throws ResonantMode when a stored mode is within tolerance of
/// resonance |w k -+ Omega| = 0.
FourierCurve apply_K(const FourierCurve& rhs, double Omega,
                     double tol_rel = kResonanceTolRel);

/// Checks |w k -+ Omega| > tol for all 0 <= k <= k_max and both signs.
NonresonanceReport check_nonresonance(double omega, double Omega, int k_max, double tol);

/// First resonant mode in the zero-mean band k = 1..k_max, or 0 if none.
int first_resonant_mode(double omega, double Omega, int k_max,
                        double tol_rel = kResonanceTolRel);

/// D_t u = u' + Omega J u.  Satisfies apply_L(u) = -D_t(D_t(u)).
FourierCurve covariant_derivative(const FourierCurve& curve, double Omega);

/// c = (1 - |Omega|/w)^2 / (1 + w^{-2}), valid for |Omega| < w.
double coercivity_constant(double omega, double Omega);

}  // namespace spectral
}  // namespace choreo
