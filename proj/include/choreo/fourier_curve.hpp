#pragma once

#include <complex>
#include <map>
#include <vector>

#include <Eigen/Dense>

namespace choreo {

using Complex = std::complex<double>;
using Vec2 = Eigen::Vector2d;
using Vec2c = Eigen::Vector2cd;
using Mat2 = Eigen::Matrix2d;
using Mat2c = Eigen::Matrix2cd;

/// Truncated Fourier representation of a real, zero-mean, T-periodic planar
/// curve u(t) = sum_k u_k e^{i omega k t}, omega = 2 pi / T.
///
/// Only modes k = 1..K are stored; the negative side is implied by the
/// reality constraint u_{-k} = conj(u_k) and the mean u_0 is identically
/// zero.  The complex-scalar view a_k refers to the expansion of
/// z(t) = x(t) + i y(t): the stored vector mode k carries the scalar modes
/// +k and -k through its two circular polarizations.
class FourierCurve {
 public:
  FourierCurve(double period, int k_max);

  double period() const { return period_; }
  double omega() const;
  int k_max() const { return k_max_; }

  /// Coefficient u_k for any |k| <= k_max (reality for k < 0, zero for k = 0).
  Vec2c coeff(int k) const;
  /// Set u_k, k >= 1.  The k < 0 side follows by reality.
  void set_coeff(int k, const Vec2c& value);

  /// Scalar coefficient a_k of z = x + iy, defined for any k != 0, |k| <= k_max.
  Complex scalar_coeff(int k) const;
  /// Set the scalar pair (a_k, a_{-k}) attached to stored mode k >= 1.
  void set_scalar_pair(int k, Complex a_pos, Complex a_neg);

  /// Build a curve from scalar modes {k -> a_k}; unlisted modes are zero.
  static FourierCurve from_scalar_modes(double period, int k_max,
                                        const std::map<int, Complex>& modes);
  /// Least-squares-free truncation: a_k = (1/M) sum_j z_j e^{-2 pi i k j / M}.
  static FourierCurve from_complex_samples(double period, int k_max,
                                           const std::vector<Complex>& samples);

  Vec2 evaluate(double t) const;
  Vec2 evaluate_derivative(double t, int order) const;
  Complex evaluate_scalar(double t, int order = 0) const;

  /// Values of z^(order) on the uniform grid t_j = j T / M, j = 0..M-1.
  std::vector<Complex> sample_scalar(int grid_size, int order = 0) const;
  std::vector<Vec2> sample(int grid_size) const;

  double norm_l2() const;
  double norm_h1() const;
  double norm_h2() const;
  /// Parseval norm of the order-th derivative.
  double derivative_norm_l2(int order) const;
  double min_radius_on_grid(int grid_size) const;

  bool is_zero(double tol = 0.0) const;

  FourierCurve& operator*=(double s);
  FourierCurve& operator+=(const FourierCurve& other);
  FourierCurve& operator-=(const FourierCurve& other);
  friend FourierCurve operator*(double s, FourierCurve c) { c *= s; return c; }
  friend FourierCurve operator+(FourierCurve a, const FourierCurve& b) { a += b; return a; }
  friend FourierCurve operator-(FourierCurve a, const FourierCurve& b) { a -= b; return a; }

 private:
  double period_;
  int k_max_;
  std::vector<Vec2c> coeffs_;  // coeffs_[k-1] = u_k
};

struct CurveNorms {
  double l2;
  double h1;
  double h2;
};

CurveNorms norms(const FourierCurve& curve);

/// Real L2 inner product of two curves with the same period.
double inner_product_l2(const FourierCurve& a, const FourierCurve& b);

/// Smallest power-of-two grid with at least 4x oversampling of 2 k_max + 1.
int dealiased_grid_size(int k_max, int requested = 0);

}  // namespace choreo
