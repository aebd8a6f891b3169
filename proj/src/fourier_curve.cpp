#include "choreo/fourier_curve.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace choreo {

namespace {

constexpr Complex kI{0.0, 1.0};

// (i w k)^order without resorting to std::pow.
Complex derivative_factor(double omega, int k, int order) {
  Complex f{1.0, 0.0};
  const Complex base = kI * (omega * k);
  for (int p = 0; p < order; ++p) f *= base;
  return f;
}

}  // namespace

FourierCurve::FourierCurve(double period, int k_max)
    : period_(period), k_max_(k_max) {
  if (!(period > 0.0)) throw std::invalid_argument("FourierCurve: period must be positive");
  if (k_max < 1) throw std::invalid_argument("FourierCurve: k_max must be >= 1");
  coeffs_.assign(static_cast<size_t>(k_max), Vec2c::Zero());
}

double FourierCurve::omega() const { return 2.0 * std::numbers::pi / period_; }

Vec2c FourierCurve::coeff(int k) const {
  if (k == 0) return Vec2c::Zero();
  const int a = std::abs(k);
  if (a > k_max_) return Vec2c::Zero();
  const Vec2c& c = coeffs_[static_cast<size_t>(a - 1)];
  return k > 0 ? c : Vec2c(c.conjugate());
}

void FourierCurve::set_coeff(int k, const Vec2c& value) {
  if (k < 1 || k > k_max_)
    throw std::invalid_argument("FourierCurve::set_coeff: mode index out of range");
  coeffs_[static_cast<size_t>(k - 1)] = value;
}

Complex FourierCurve::scalar_coeff(int k) const {
  if (k == 0 || std::abs(k) > k_max_) return {0.0, 0.0};
  const Vec2c c = coeff(std::abs(k));
  if (k > 0) return c(0) + kI * c(1);           // a_k = x_k + i y_k
  return std::conj(c(0) - kI * c(1));           // a_{-k} = conj(x_k - i y_k)
}

void FourierCurve::set_scalar_pair(int k, Complex a_pos, Complex a_neg) {
  if (k < 1 || k > k_max_)
    throw std::invalid_argument("FourierCurve::set_scalar_pair: mode index out of range");
  const Complex x = 0.5 * (a_pos + std::conj(a_neg));
  const Complex y = -0.5 * kI * (a_pos - std::conj(a_neg));
  coeffs_[static_cast<size_t>(k - 1)] = Vec2c(x, y);
}

FourierCurve FourierCurve::from_scalar_modes(double period, int k_max,
                                             const std::map<int, Complex>& modes) {
  FourierCurve curve(period, k_max);
  for (int k = 1; k <= k_max; ++k) {
    const auto pos = modes.find(k);
    const auto neg = modes.find(-k);
    const Complex ap = pos == modes.end() ? Complex{} : pos->second;
    const Complex an = neg == modes.end() ? Complex{} : neg->second;
    if (ap != Complex{} || an != Complex{}) curve.set_scalar_pair(k, ap, an);
  }
  for (const auto& [k, a] : modes) {
    if (k == 0 || std::abs(k) > k_max)
      throw std::invalid_argument("from_scalar_modes: mode " + std::to_string(k) +
                                  " outside the stored band");
    (void)a;
  }
  return curve;
}

FourierCurve FourierCurve::from_complex_samples(double period, int k_max,
                                                const std::vector<Complex>& samples) {
  const int m = static_cast<int>(samples.size());
  if (m < 2 * k_max + 2)
    throw std::invalid_argument("from_complex_samples: grid too coarse for the band");
  FourierCurve curve(period, k_max);
  std::vector<Complex> roots(static_cast<size_t>(m));
  for (int q = 0; q < m; ++q) {
    const double phi = 2.0 * std::numbers::pi * q / m;
    roots[static_cast<size_t>(q)] = Complex(std::cos(phi), std::sin(phi));
  }
  for (int k = 1; k <= k_max; ++k) {
    Complex ap{}, an{};
    for (int j = 0; j < m; ++j) {
      const Complex w = roots[static_cast<size_t>((static_cast<long long>(k) * j) % m)];
      ap += samples[static_cast<size_t>(j)] * std::conj(w);
      an += samples[static_cast<size_t>(j)] * w;
    }
    curve.set_scalar_pair(k, ap / double(m), an / double(m));
  }
  return curve;
}

Complex FourierCurve::evaluate_scalar(double t, int order) const {
  const double w = omega();
  const Complex p(std::cos(w * t), std::sin(w * t));
  Complex pk{1.0, 0.0};
  Complex acc{};
  for (int k = 1; k <= k_max_; ++k) {
    pk *= p;
    const Complex ap = scalar_coeff(k);
    const Complex an = scalar_coeff(-k);
    const Complex f = derivative_factor(w, k, order);
    acc += f * ap * pk + std::conj(f) * an * std::conj(pk);
  }
  return acc;
}

Vec2 FourierCurve::evaluate(double t) const {
  const Complex z = evaluate_scalar(t, 0);
  return Vec2(z.real(), z.imag());
}

Vec2 FourierCurve::evaluate_derivative(double t, int order) const {
  const Complex z = evaluate_scalar(t, order);
  return Vec2(z.real(), z.imag());
}

std::vector<Complex> FourierCurve::sample_scalar(int grid_size, int order) const {
  if (grid_size < 1) throw std::invalid_argument("sample_scalar: empty grid");
  const int m = grid_size;
  const double w = omega();
  std::vector<Complex> roots(static_cast<size_t>(m));
  for (int q = 0; q < m; ++q) {
    const double phi = 2.0 * std::numbers::pi * q / m;
    roots[static_cast<size_t>(q)] = Complex(std::cos(phi), std::sin(phi));
  }
  std::vector<Complex> out(static_cast<size_t>(m), Complex{});
  for (int k = 1; k <= k_max_; ++k) {
    const Complex ap = scalar_coeff(k);
    const Complex an = scalar_coeff(-k);
    if (ap == Complex{} && an == Complex{}) continue;
    const Complex f = derivative_factor(w, k, order);
    const Complex cp = f * ap;
    const Complex cn = std::conj(f) * an;
    for (int j = 0; j < m; ++j) {
      const Complex r = roots[static_cast<size_t>((static_cast<long long>(k) * j) % m)];
      out[static_cast<size_t>(j)] += cp * r + cn * std::conj(r);
    }
  }
  return out;
}

std::vector<Vec2> FourierCurve::sample(int grid_size) const {
  const auto zs = sample_scalar(grid_size, 0);
  std::vector<Vec2> out(zs.size());
  for (size_t j = 0; j < zs.size(); ++j) out[j] = Vec2(zs[j].real(), zs[j].imag());
  return out;
}

double FourierCurve::derivative_norm_l2(int order) const {
  const double w = omega();
  double sum = 0.0;
  for (int k = 1; k <= k_max_; ++k) {
    const Vec2c& c = coeffs_[static_cast<size_t>(k - 1)];
    double factor = 1.0;
    for (int p = 0; p < order; ++p) factor *= (w * k) * (w * k);
    sum += factor * c.squaredNorm();
  }
  return std::sqrt(2.0 * period_ * sum);
}

double FourierCurve::norm_l2() const { return derivative_norm_l2(0); }

double FourierCurve::norm_h1() const {
  const double a = derivative_norm_l2(0);
  const double b = derivative_norm_l2(1);
  return std::sqrt(a * a + b * b);
}

double FourierCurve::norm_h2() const {
  const double a = derivative_norm_l2(0);
  const double b = derivative_norm_l2(1);
  const double c = derivative_norm_l2(2);
  return std::sqrt(a * a + b * b + c * c);
}

double FourierCurve::min_radius_on_grid(int grid_size) const {
  const auto zs = sample_scalar(grid_size, 0);
  double r = std::numeric_limits<double>::infinity();
  for (const auto& z : zs) r = std::min(r, std::abs(z));
  return r;
}

bool FourierCurve::is_zero(double tol) const {
  for (const auto& c : coeffs_)
    if (c.norm() > tol) return false;
  return true;
}

FourierCurve& FourierCurve::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

namespace {
void check_compatible(const FourierCurve& a, const FourierCurve& b) {
  if (std::abs(a.period() - b.period()) > 1e-12 * a.period())
    throw std::invalid_argument("curve arithmetic: period mismatch");
}
}  // namespace

FourierCurve& FourierCurve::operator+=(const FourierCurve& other) {
  check_compatible(*this, other);
  if (other.k_max_ > k_max_) {
    coeffs_.resize(static_cast<size_t>(other.k_max_), Vec2c::Zero());
    k_max_ = other.k_max_;
  }
  for (int k = 1; k <= other.k_max_; ++k)
    coeffs_[static_cast<size_t>(k - 1)] += other.coeffs_[static_cast<size_t>(k - 1)];
  return *this;
}

FourierCurve& FourierCurve::operator-=(const FourierCurve& other) {
  check_compatible(*this, other);
  if (other.k_max_ > k_max_) {
    coeffs_.resize(static_cast<size_t>(other.k_max_), Vec2c::Zero());
    k_max_ = other.k_max_;
  }
  for (int k = 1; k <= other.k_max_; ++k)
    coeffs_[static_cast<size_t>(k - 1)] -= other.coeffs_[static_cast<size_t>(k - 1)];
  return *this;
}

CurveNorms norms(const FourierCurve& curve) {
  return {curve.norm_l2(), curve.norm_h1(), curve.norm_h2()};
}

double inner_product_l2(const FourierCurve& a, const FourierCurve& b) {
  if (std::abs(a.period() - b.period()) > 1e-12 * a.period())
    throw std::invalid_argument("inner_product_l2: period mismatch");
  const int k_max = std::min(a.k_max(), b.k_max());
  double sum = 0.0;
  for (int k = 1; k <= k_max; ++k)
    sum += a.coeff(k).dot(b.coeff(k)).real();
  return 2.0 * a.period() * sum;
}

int dealiased_grid_size(int k_max, int requested) {
  int need = std::max(requested, 4 * (2 * k_max + 1));
  int m = 16;
  while (m < need) m *= 2;
  return m;
}

}  // namespace choreo
