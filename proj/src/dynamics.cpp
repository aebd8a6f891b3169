#include "choreo/dynamics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace choreo {

PhysicalParams::PhysicalParams(double mass_, double alpha_, int n_, double Omega_)
    : mass(mass_), alpha(alpha_), n(n_), Omega(Omega_) {
  if (!(mass > 0.0)) throw std::invalid_argument("PhysicalParams: mass must be positive");
  if (!(alpha > 0.0 && alpha < 2.0))
    throw std::invalid_argument("PhysicalParams: alpha must lie in (0, 2)");
  if (n < 3) throw std::invalid_argument("PhysicalParams: n must be >= 3");
}

namespace dynamics {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_consistent(const PhysicalParams& params, const SymmetrySpec& spec) {
  if (params.n != spec.n)
    throw std::invalid_argument("body count differs between params and symmetry spec");
}

// Scalar samples of the rotated, time-shifted copy
//   w_b(t) = e^{2 pi i b / n} z(t + b T / n)
// obtained by phase-shifting the coefficients (exact in coefficient space).
std::vector<Complex> shifted_copy_samples(const FourierCurve& curve, int n, int body,
                                          int grid_size) {
  const double two_pi = 2.0 * std::numbers::pi;
  FourierCurve shifted(curve.period(), curve.k_max());
  const Complex rot(std::cos(two_pi * body / n), std::sin(two_pi * body / n));
  for (int k = 1; k <= curve.k_max(); ++k) {
    const double phi_p = two_pi * static_cast<double>(k) * body / n;
    const double phi_m = -phi_p;
    const Complex ap = curve.scalar_coeff(k) * Complex(std::cos(phi_p), std::sin(phi_p)) * rot;
    const Complex an = curve.scalar_coeff(-k) * Complex(std::cos(phi_m), std::sin(phi_m)) * rot;
    shifted.set_scalar_pair(k, ap, an);
  }
  return shifted.sample_scalar(grid_size);
}

struct ForceSamples {
  std::vector<Complex> force;  // sum_b m (w_b - z)/|w_b - z|^{alpha+2}
  double min_separation = std::numeric_limits<double>::infinity();
};

ForceSamples interaction_force(const FourierCurve& curve, const PhysicalParams& params,
                               const SymmetrySpec& spec, int grid_size, double rho_min) {
  check_consistent(params, spec);
  const int m = grid_size;
  ForceSamples out;
  out.force.assign(static_cast<size_t>(m), Complex{});
  const auto z = curve.sample_scalar(m);
  for (int b = 1; b < spec.n; ++b) {
    const auto w = shifted_copy_samples(curve, spec.n, b, m);
    for (int j = 0; j < m; ++j) {
      const Complex d = w[static_cast<size_t>(j)] - z[static_cast<size_t>(j)];
      const double r = std::abs(d);
      out.min_separation = std::min(out.min_separation, r);
      if (r < rho_min) throw CollisionProximity(out.min_separation);
      out.force[static_cast<size_t>(j)] +=
          params.mass * d / std::pow(r, params.alpha + 2.0);
    }
  }
  return out;
}

int effective_grid(const FourierCurve& curve, int grid_size) {
  return dealiased_grid_size(curve.k_max(), grid_size);
}

}  // namespace

FourierCurve apply_N(const FourierCurve& curve, const PhysicalParams& params,
                     const SymmetrySpec& spec, int grid_size, double rho_min) {
  const int m = effective_grid(curve, grid_size);
  auto fs = interaction_force(curve, params, spec, m, rho_min);
  // N(u) = -force, so that L u = N(u) matches the rotating-frame equation.
  for (auto& f : fs.force) f = -f;
  return FourierCurve::from_complex_samples(curve.period(), curve.k_max(), fs.force);
}

double potential_U(const Configuration& config, const PhysicalParams& params,
                   int t_index) {
  if (t_index < 0 || t_index >= config.grid_size())
    throw std::invalid_argument("potential_U: time index out of range");
  double u = 0.0;
  for (int i = 0; i < config.n; ++i) {
    for (int j = i + 1; j < config.n; ++j) {
      const double r = (config.positions[static_cast<size_t>(i)][static_cast<size_t>(t_index)] -
                        config.positions[static_cast<size_t>(j)][static_cast<size_t>(t_index)])
                           .norm();
      if (r == 0.0) throw CollisionProximity(0.0);
      u += params.mass * params.mass / std::pow(r, params.alpha);
    }
  }
  return u;
}

double potential_bound_CU(int n, double alpha, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("potential_bound_CU: rho must be positive");
  return n * (n - 1) / (2.0 * std::pow(rho, alpha));
}

double force_position_pairing(const Configuration& config,
                              const PhysicalParams& params, int t_index) {
  if (t_index < 0 || t_index >= config.grid_size())
    throw std::invalid_argument("force_position_pairing: time index out of range");
  const auto& pos = config.positions;
  const auto j = static_cast<size_t>(t_index);
  double pairing = 0.0;
  for (int i = 0; i < config.n; ++i) {
    Vec2 f = Vec2::Zero();
    for (int l = 0; l < config.n; ++l) {
      if (l == i) continue;
      const Vec2 d = pos[static_cast<size_t>(l)][j] - pos[static_cast<size_t>(i)][j];
      const double r = d.norm();
      if (r == 0.0) throw CollisionProximity(0.0);
      f += params.mass * d / std::pow(r, params.alpha + 2.0);
    }
    pairing += f.dot(pos[static_cast<size_t>(i)][j]);
  }
  return pairing;
}

ResidualReport physical_residual(const FourierCurve& curve,
                                 const PhysicalParams& params,
                                 const SymmetrySpec& spec, int grid_size,
                                 double rho_min) {
  const int m = effective_grid(curve, grid_size);
  const auto fs = interaction_force(curve, params, spec, m, rho_min);
  const auto z = curve.sample_scalar(m);
  const auto dz = curve.sample_scalar(m, 1);
  const auto ddz = curve.sample_scalar(m, 2);
  std::vector<Complex> r(static_cast<size_t>(m));
  double sup = 0.0, sum_sq = 0.0;
  const double Om = params.Omega;
  for (int j = 0; j < m; ++j) {
    const auto idx = static_cast<size_t>(j);
    // J acts on z = x + i y as multiplication by i.
    const Complex val = ddz[idx] + 2.0 * Om * kI * dz[idx] - Om * Om * z[idx] - fs.force[idx];
    r[idx] = val;
    sup = std::max(sup, std::abs(val));
    sum_sq += std::norm(val);
  }
  ResidualReport report{FourierCurve::from_complex_samples(curve.period(), curve.k_max(), r),
                        std::sqrt(curve.period() / m * sum_sq), sup};
  return report;
}

Configuration build_configuration(const FourierCurve& curve, const SymmetrySpec& spec,
                                  int grid_size) {
  if (grid_size < 2) throw std::invalid_argument("build_configuration: grid too small");
  Configuration config;
  config.n = spec.n;
  config.period = curve.period();
  config.times.resize(static_cast<size_t>(grid_size));
  for (int j = 0; j < grid_size; ++j)
    config.times[static_cast<size_t>(j)] = curve.period() * j / grid_size;
  config.positions.resize(static_cast<size_t>(spec.n));
  const auto z0 = curve.sample_scalar(grid_size);
  auto to_vec = [](const Complex& z) { return Vec2(z.real(), z.imag()); };
  for (int b = 0; b < spec.n; ++b) {
    auto& body = config.positions[static_cast<size_t>(b)];
    body.resize(static_cast<size_t>(grid_size));
    if (b == 0) {
      for (int j = 0; j < grid_size; ++j) body[static_cast<size_t>(j)] = to_vec(z0[static_cast<size_t>(j)]);
    } else {
      const auto w = shifted_copy_samples(curve, spec.n, b, grid_size);
      for (int j = 0; j < grid_size; ++j) body[static_cast<size_t>(j)] = to_vec(w[static_cast<size_t>(j)]);
    }
  }
  config.min_separation = min_separation(config);
  return config;
}

Configuration rotating_to_inertial(const Configuration& config, double Omega) {
  Configuration out = config;
  for (int j = 0; j < config.grid_size(); ++j) {
    const double t = config.times[static_cast<size_t>(j)];
    const Mat2 r = symmetry::rotation(Omega * t);
    for (int b = 0; b < config.n; ++b)
      out.positions[static_cast<size_t>(b)][static_cast<size_t>(j)] =
          r * config.positions[static_cast<size_t>(b)][static_cast<size_t>(j)];
  }
  out.min_separation = min_separation(out);
  return out;
}

double min_separation(const Configuration& config) {
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < config.grid_size(); ++j) {
    for (int a = 0; a < config.n; ++a)
      for (int b = a + 1; b < config.n; ++b)
        best = std::min(best, (config.positions[static_cast<size_t>(a)][static_cast<size_t>(j)] -
                               config.positions[static_cast<size_t>(b)][static_cast<size_t>(j)])
                                  .norm());
  }
  return best;
}

LipschitzProbe lipschitz_estimate(const FourierCurve& u, const FourierCurve& v,
                                  const PhysicalParams& params,
                                  const SymmetrySpec& spec, int grid_size) {
  const int m = dealiased_grid_size(std::max(u.k_max(), v.k_max()), grid_size);
  const FourierCurve nu = apply_N(u, params, spec, m);
  const FourierCurve nv = apply_N(v, params, spec, m);
  const FourierCurve diff_n = nu - nv;

  double sup_diff = 0.0;
  {
    const auto zu = u.sample_scalar(m);
    const auto zv = v.sample_scalar(m);
    for (int j = 0; j < m; ++j)
      sup_diff = std::max(sup_diff,
                          std::abs(zu[static_cast<size_t>(j)] - zv[static_cast<size_t>(j)]));
  }
  // Common separation floor of the two curves' configurations.
  double rho = std::numeric_limits<double>::infinity();
  for (const FourierCurve* c : {&u, &v}) {
    const auto z = c->sample_scalar(m);
    for (int b = 1; b < spec.n; ++b) {
      const auto w = shifted_copy_samples(*c, spec.n, b, m);
      for (int j = 0; j < m; ++j)
        rho = std::min(rho, std::abs(w[static_cast<size_t>(j)] - z[static_cast<size_t>(j)]));
    }
  }
  const double c_impl = 4.0 * std::sqrt(u.period()) * params.mass * (params.alpha + 1.0) *
                        (spec.n - 1);
  LipschitzProbe probe;
  probe.rho = rho;
  probe.bound = c_impl * std::pow(rho, -(params.alpha + 2.0));
  probe.ratio = sup_diff > 0.0 ? diff_n.norm_l2() / sup_diff : 0.0;
  return probe;
}

PairingReport pairing_report(const FourierCurve& curve, const PhysicalParams& params,
                             const SymmetrySpec& spec, int grid_size) {
  const int m = effective_grid(curve, grid_size);
  const FourierCurve n_curve = apply_N(curve, params, spec, m);
  PairingReport report;
  report.generator_pairing = inner_product_l2(n_curve, curve);
  const Configuration config = build_configuration(curve, spec, m);
  double mean = 0.0;
  for (int j = 0; j < m; ++j) mean += force_position_pairing(config, params, j);
  report.configuration_pairing_mean = mean / m;
  return report;
}

}  // namespace dynamics
}  // namespace choreo
