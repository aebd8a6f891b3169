#include "choreo/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "choreo/symmetry.hpp"

namespace choreo {
namespace spectral {

namespace {
constexpr Complex kI{0.0, 1.0};

Mat2c j_complex() { return symmetry::j_matrix().cast<Complex>(); }
}  // namespace

ModeMatrix mode_matrix(int k, double omega, double Omega) {
  const double wk = omega * k;
  Mat2c a = (wk * wk + Omega * Omega) * Mat2c::Identity();
  a -= 2.0 * kI * wk * Omega * j_complex();
  const double lp = (wk - Omega) * (wk - Omega);
  const double lm = (wk + Omega) * (wk + Omega);
  return {k, a, lp, lm};
}

std::pair<Mat2c, Mat2c> spectral_projectors() {
  const Mat2c j = j_complex();
  const Mat2c p_plus = 0.5 * (Mat2c::Identity() + kI * j);
  const Mat2c p_minus = 0.5 * (Mat2c::Identity() - kI * j);
  return {p_plus, p_minus};
}

FourierCurve apply_L(const FourierCurve& curve, double Omega) {
  const double w = curve.omega();
  FourierCurve out(curve.period(), curve.k_max());
  for (int k = 1; k <= curve.k_max(); ++k) {
    const ModeMatrix mm = mode_matrix(k, w, Omega);
    out.set_coeff(k, mm.matrix * curve.coeff(k));
  }
  return out;
}

FourierCurve apply_K(const FourierCurve& rhs, double Omega, double tol_rel) {
  const double w = rhs.omega();
  const double tol = tol_rel * w;
  const auto [p_plus, p_minus] = spectral_projectors();
  FourierCurve out(rhs.period(), rhs.k_max());
  for (int k = 1; k <= rhs.k_max(); ++k) {
    const double gap = std::min(std::abs(w * k - Omega), std::abs(w * k + Omega));
    if (gap < tol) throw ResonantMode(k, gap);
    const double lp = (w * k - Omega) * (w * k - Omega);
    const double lm = (w * k + Omega) * (w * k + Omega);
    const Vec2c c = rhs.coeff(k);
    out.set_coeff(k, Vec2c(p_plus * c / lp + p_minus * c / lm));
  }
  return out;
}

NonresonanceReport check_nonresonance(double omega, double Omega, int k_max, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("check_nonresonance: tol must be positive");
  NonresonanceReport report;
  for (int k = 0; k <= k_max; ++k) {
    const double gap = std::min(std::abs(omega * k - Omega), std::abs(omega * k + Omega));
    if (gap <= tol) {
      report.ok = false;
      if (k > 0) report.offending.push_back(-k);
      report.offending.push_back(k);
    }
  }
  std::sort(report.offending.begin(), report.offending.end());
  return report;
}

int first_resonant_mode(double omega, double Omega, int k_max, double tol_rel) {
  const double tol = tol_rel * omega;
  for (int k = 1; k <= k_max; ++k) {
    const double gap = std::min(std::abs(omega * k - Omega), std::abs(omega * k + Omega));
    if (gap < tol) return k;
  }
  return 0;
}

FourierCurve covariant_derivative(const FourierCurve& curve, double Omega) {
  const double w = curve.omega();
  const Mat2c j = j_complex();
  FourierCurve out(curve.period(), curve.k_max());
  for (int k = 1; k <= curve.k_max(); ++k) {
    const Mat2c d = kI * (w * k) * Mat2c::Identity() + Omega * j;
    out.set_coeff(k, d * curve.coeff(k));
  }
  return out;
}

double coercivity_constant(double omega, double Omega) {
  if (!(std::abs(Omega) < omega))
    throw HypothesisViolated("coercivity requires |Omega| < omega");
  const double a = 1.0 - std::abs(Omega) / omega;
  return a * a / (1.0 + 1.0 / (omega * omega));
}

}  // namespace spectral
}  // namespace choreo
