#include "choreo/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace choreo {

SymmetrySpec::SymmetrySpec(int n_, int w_, double period_)
    : n(n_), w(w_), period(period_) {
  if (n < 3) throw std::invalid_argument("SymmetrySpec: n must be >= 3");
  if (w < 1) throw std::invalid_argument("SymmetrySpec: W must be >= 1");
  if (!(period > 0.0)) throw std::invalid_argument("SymmetrySpec: period must be positive");
}

bool SymmetrySpec::is_choreography() const { return std::gcd(w, n) == 1; }

double SymmetrySpec::omega() const { return 2.0 * std::numbers::pi / period; }

namespace symmetry {

Mat2 rotation(double angle) {
  if (!std::isfinite(angle)) throw std::invalid_argument("rotation: angle must be finite");
  const double c = std::cos(angle), s = std::sin(angle);
  Mat2 r;
  r << c, -s, s, c;
  return r;
}

Mat2 j_matrix() {
  Mat2 j;
  j << 0.0, -1.0, 1.0, 0.0;
  return j;
}

Mat2 s_matrix() {
  Mat2 s;
  s << 1.0, 0.0, 0.0, -1.0;
  return s;
}

OrbitDecomposition orbit_decomposition(int n, int w) {
  if (n < 3) throw std::invalid_argument("orbit_decomposition: n must be >= 3");
  if (w < 1) throw std::invalid_argument("orbit_decomposition: W must be >= 1");
  OrbitDecomposition dec;
  dec.d = std::gcd(w, n);
  dec.orbit_count = dec.d;
  dec.orbit_size = n / dec.d;
  std::vector<bool> seen(static_cast<size_t>(n), false);
  for (int start = 0; start < n; ++start) {
    if (seen[static_cast<size_t>(start)]) continue;
    std::vector<int> orbit;
    int j = start;
    do {
      seen[static_cast<size_t>(j)] = true;
      orbit.push_back(j);
      j = (j + w) % n;
    } while (j != start);
    std::sort(orbit.begin(), orbit.end());
    dec.orbits.push_back(std::move(orbit));
  }
  return dec;
}

std::vector<int> admissible_modes(const SymmetrySpec& spec, int l_min, int l_max) {
  if (l_min > l_max) throw std::invalid_argument("admissible_modes: empty range");
  std::vector<int> modes;
  modes.reserve(static_cast<size_t>(l_max - l_min + 1));
  for (int l = l_min; l <= l_max; ++l) modes.push_back(1 + l * spec.n);
  return modes;
}

std::vector<int> lattice_modes(int n, int k_max) {
  std::vector<int> modes;
  for (int k = -k_max; k <= k_max; ++k)
    if (((k - 1) % n + n) % n == 0) modes.push_back(k);
  return modes;
}

FourierCurve project_symmetry(const FourierCurve& curve, const SymmetrySpec& spec) {
  if (std::abs(curve.period() - spec.period) > 1e-12 * spec.period)
    throw std::invalid_argument("project_symmetry: curve period differs from spec");
  const int n = spec.n;
  FourierCurve out(curve.period(), curve.k_max());
  auto admissible = [n](int k) { return ((k - 1) % n + n) % n == 0; };
  for (int k = 1; k <= curve.k_max(); ++k) {
    const Complex ap = admissible(k) ? Complex(curve.scalar_coeff(k).real(), 0.0) : Complex{};
    const Complex an = admissible(-k) ? Complex(curve.scalar_coeff(-k).real(), 0.0) : Complex{};
    if (ap != Complex{} || an != Complex{}) out.set_scalar_pair(k, ap, an);
  }
  return out;
}

int winding_number(const FourierCurve& curve, int grid_size, double eps_radius) {
  constexpr int kGridCap = 1 << 20;
  int m = std::max(grid_size, 16);
  const double pi = std::numbers::pi;
  while (true) {
    const auto zs = curve.sample_scalar(m);
    double min_r = std::numeric_limits<double>::infinity();
    for (const auto& z : zs) min_r = std::min(min_r, std::abs(z));
    if (!(min_r > eps_radius)) throw OriginTooClose(min_r);

    double total = 0.0;
    double worst = 0.0;
    double prev = std::arg(zs[0]);
    for (int j = 1; j <= m; ++j) {
      const double cur = std::arg(zs[static_cast<size_t>(j % m)]);
      const double inc = std::remainder(cur - prev, 2.0 * pi);
      worst = std::max(worst, std::abs(inc));
      total += inc;
      prev = cur;
    }
    if (worst < 0.5 * pi || m >= kGridCap) {
      if (worst >= pi * (1.0 - 1e-9)) throw UnresolvedWinding(m);
      const double turns = total / (2.0 * pi);
      const int w = static_cast<int>(std::lround(turns));
      if (std::abs(turns - w) > 1e-6) throw UnresolvedWinding(m);
      return w;
    }
    m *= 2;
  }
}

double separation_lower_bound(int n, double r_star) {
  if (n < 3) throw std::invalid_argument("separation_lower_bound: n must be >= 3");
  if (!(r_star > 0.0))
    throw std::invalid_argument("separation_lower_bound: r_star must be positive");
  const long double s = sinl(3.141592653589793238462643383279502884L / n);
  return static_cast<double>(2.0L * static_cast<long double>(r_star) * s);
}

double pairwise_separation_exact(const std::function<double(double)>& rho, int n,
                                 int w, int body, double t) {
  if (body < 1 || body >= n)
    throw std::invalid_argument("pairwise_separation_exact: body index out of range");
  const double r = rho(w * t);
  const long double s =
      sinl(3.141592653589793238462643383279502884L * body / n);
  return static_cast<double>(2.0L * static_cast<long double>(r) * s);
}

}  // namespace symmetry
}  // namespace choreo
