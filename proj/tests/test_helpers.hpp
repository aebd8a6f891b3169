#pragma once

#include <complex>
#include <map>
#include <random>

#include "choreo/fourier_curve.hpp"
#include "choreo/symmetry.hpp"

namespace choreo::testing {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

inline FourierCurve random_curve(std::mt19937_64& rng, double period = kTwoPi,
                                 int k_max = 16, double decay = 0.7) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  FourierCurve curve(period, k_max);
  double scale = 1.0;
  for (int k = 1; k <= k_max; ++k) {
    curve.set_coeff(k, Vec2c(Complex(gauss(rng), gauss(rng)) * scale,
                             Complex(gauss(rng), gauss(rng)) * scale));
    scale *= decay;
  }
  return curve;
}

inline FourierCurve random_symmetric_curve(std::mt19937_64& rng, const SymmetrySpec& spec,
                                           int k_max = 16, double decay = 0.7) {
  return symmetry::project_symmetry(random_curve(rng, spec.period, k_max, decay), spec);
}

// Admissible radial-profile curve u(t) = rho(omega t) e^{i W omega t} with
// rho(s) = base + sum_m c_m cos(n m s): even, 2 pi / n periodic, >= r_min > 0.
inline FourierCurve radial_profile_curve(std::mt19937_64& rng, const SymmetrySpec& spec,
                                         int harmonics = 2, double base = 1.0) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::map<int, Complex> modes;
  modes[spec.w] = Complex(base, 0.0);
  double budget = 0.35 * base;
  for (int m = 1; m <= harmonics; ++m) {
    const double c = budget * unif(rng) / harmonics;
    // rho term c cos(n m s) splits into scalar modes W +- n m with weight c/2.
    modes[spec.w + spec.n * m] += Complex(0.5 * c, 0.0);
    modes[spec.w - spec.n * m] += Complex(0.5 * c, 0.0);
  }
  const int k_max = std::max({std::abs(spec.w + spec.n * harmonics),
                              std::abs(spec.w - spec.n * harmonics), 1});
  return FourierCurve::from_scalar_modes(spec.period, k_max, modes);
}

}  // namespace choreo::testing
