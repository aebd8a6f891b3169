#include "choreo/verify.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "choreo/spectral.hpp"

namespace choreo {
namespace verify {

namespace {

// -u'' - 2 Omega J u' + Omega^2 u with wraparound central differences.
std::vector<Vec2> fd_apply_l(const std::vector<Vec2>& u, double h, double Omega,
                             int order) {
  const int m = static_cast<int>(u.size());
  const Mat2 j = symmetry::j_matrix();
  std::vector<Vec2> out(u.size());
  auto at = [&](int i) -> const Vec2& {
    return u[static_cast<size_t>(((i % m) + m) % m)];
  };
  for (int i = 0; i < m; ++i) {
    Vec2 d1, d2;
    if (order == 2) {
      d1 = (at(i + 1) - at(i - 1)) / (2.0 * h);
      d2 = (at(i + 1) - 2.0 * at(i) + at(i - 1)) / (h * h);
    } else if (order == 4) {
      d1 = (-at(i + 2) + 8.0 * at(i + 1) - 8.0 * at(i - 1) + at(i - 2)) / (12.0 * h);
      d2 = (-at(i + 2) + 16.0 * at(i + 1) - 30.0 * at(i) + 16.0 * at(i - 1) -
            at(i - 2)) /
           (12.0 * h * h);
    } else {
      throw std::invalid_argument("fd_operator_oracle: order must be 2 or 4");
    }
    out[static_cast<size_t>(i)] = -d2 - 2.0 * Omega * (j * d1) + Omega * Omega * at(i);
  }
  return out;
}

struct NBodyState {
  std::vector<Vec2> q;
  std::vector<Vec2> v;
};

using StateVector = Eigen::VectorXd;

StateVector pack_state(const NBodyState& s) {
  const int n = static_cast<int>(s.q.size());
  StateVector y(4 * n);
  for (int i = 0; i < n; ++i) {
    y[4 * i + 0] = s.q[static_cast<size_t>(i)].x();
    y[4 * i + 1] = s.q[static_cast<size_t>(i)].y();
    y[4 * i + 2] = s.v[static_cast<size_t>(i)].x();
    y[4 * i + 3] = s.v[static_cast<size_t>(i)].y();
  }
  return y;
}

NBodyState unpack_state(const StateVector& y) {
  const int n = static_cast<int>(y.size() / 4);
  NBodyState s;
  s.q.resize(static_cast<size_t>(n));
  s.v.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    s.q[static_cast<size_t>(i)] = Vec2(y[4 * i + 0], y[4 * i + 1]);
    s.v[static_cast<size_t>(i)] = Vec2(y[4 * i + 2], y[4 * i + 3]);
  }
  return s;
}

double state_min_separation(const StateVector& y, int n) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double dx = y[4 * i] - y[4 * j];
      const double dy = y[4 * i + 1] - y[4 * j + 1];
      best = std::min(best, std::hypot(dx, dy));
    }
  return best;
}

StateVector nbody_rhs(const StateVector& y, const PhysicalParams& params) {
  const int n = params.n;
  StateVector dy(y.size());
  for (int i = 0; i < n; ++i) {
    dy[4 * i + 0] = y[4 * i + 2];
    dy[4 * i + 1] = y[4 * i + 3];
    double ax = 0.0, ay = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double dx = y[4 * j] - y[4 * i];
      const double dyy = y[4 * j + 1] - y[4 * i + 1];
      const double r = std::hypot(dx, dyy);
      const double f = params.mass / std::pow(r, params.alpha + 2.0);
      ax += f * dx;
      ay += f * dyy;
    }
    dy[4 * i + 2] = ax;
    dy[4 * i + 3] = ay;
  }
  return dy;
}

// Dormand-Prince 5(4) step with the standard dense-output interpolant.
struct Dopri5Step {
  StateVector y1;
  double error;  // scaled error estimate
  StateVector rcont1, rcont2, rcont3, rcont4, rcont5;
  StateVector k_last;  // FSAL

  StateVector interpolate(double theta) const {
    const double th1 = 1.0 - theta;
    return rcont1 +
           theta * (rcont2 + th1 * (rcont3 + theta * (rcont4 + th1 * rcont5)));
  }
};

Dopri5Step dopri5_step(const StateVector& y0, const StateVector& k1, double h,
                       const PhysicalParams& params, double atol, double rtol) {
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
  static constexpr double d1 = -12715105075.0 / 11282082432.0,
                          d3 = 87487479700.0 / 32700410799.0,
                          d4 = -10690763975.0 / 1880347072.0,
                          d5 = 701980252875.0 / 199316789632.0,
                          d6 = -1453857185.0 / 822651844.0,
                          d7 = 69997945.0 / 29380423.0;

  const StateVector k2 = nbody_rhs(y0 + h * (a21 * k1), params);
  const StateVector k3 = nbody_rhs(y0 + h * (a31 * k1 + a32 * k2), params);
  const StateVector k4 = nbody_rhs(y0 + h * (a41 * k1 + a42 * k2 + a43 * k3), params);
  const StateVector k5 =
      nbody_rhs(y0 + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4), params);
  const StateVector k6 = nbody_rhs(
      y0 + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5), params);
  StateVector y1 = y0 + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
  const StateVector k7 = nbody_rhs(y1, params);

  const StateVector err_vec =
      h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
  double err = 0.0;
  for (Eigen::Index i = 0; i < y0.size(); ++i) {
    const double sc = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double e = err_vec[i] / sc;
    err += e * e;
  }
  err = std::sqrt(err / static_cast<double>(y0.size()));

  Dopri5Step step;
  step.y1 = y1;
  step.error = err;
  step.k_last = k7;
  const StateVector ydiff = y1 - y0;
  const StateVector bspl = h * k1 - ydiff;
  step.rcont1 = y0;
  step.rcont2 = ydiff;
  step.rcont3 = bspl;
  step.rcont4 = ydiff - h * k7 - bspl;
  step.rcont5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
  return step;
}

}  // namespace

double fd_operator_oracle(const FourierCurve& curve, double Omega, int grid_size,
                          int fd_order) {
  if (grid_size < 8 * (2 * curve.k_max() + 1))
    throw std::invalid_argument(
        "fd_operator_oracle: grid must be at least 8x the band size");
  const auto u = curve.sample(grid_size);
  const double h = curve.period() / grid_size;
  const auto fd = fd_apply_l(u, h, Omega, fd_order);
  const auto lu = spectral::apply_L(curve, Omega).sample(grid_size);
  double max_dev = 0.0, max_ref = 0.0;
  for (int i = 0; i < grid_size; ++i) {
    max_dev = std::max(max_dev,
                       (fd[static_cast<size_t>(i)] - lu[static_cast<size_t>(i)]).norm());
    max_ref = std::max(max_ref, lu[static_cast<size_t>(i)].norm());
  }
  return max_ref > 0.0 ? max_dev / max_ref : max_dev;
}

OdeOracleResult ode_oracle(const FourierCurve& curve, const PhysicalParams& params,
                           const SymmetrySpec& spec, double integrator_tol,
                           int samples, double rho_min) {
  if (params.n != spec.n)
    throw std::invalid_argument("ode_oracle: inconsistent body counts");
  const int n = spec.n;
  const double period = curve.period();
  if (samples <= 0) samples = 256 * n;
  if (samples % n != 0) samples += n - samples % n;

  // Inertial initial conditions from the rotating-frame generator.
  NBodyState init;
  init.q.resize(static_cast<size_t>(n));
  init.v.resize(static_cast<size_t>(n));
  const Mat2 j = symmetry::j_matrix();
  for (int b = 0; b < n; ++b) {
    const double shift = b * period / n;
    const Mat2 rot = symmetry::rotation(2.0 * std::numbers::pi * b / n);
    const Vec2 x = rot * curve.evaluate(shift);
    const Vec2 xdot = rot * (curve.evaluate_derivative(shift, 1) +
                             params.Omega * (j * curve.evaluate(shift)));
    init.q[static_cast<size_t>(b)] = x;
    init.v[static_cast<size_t>(b)] = xdot;
  }

  StateVector y = pack_state(init);
  StateVector k1 = nbody_rhs(y, params);

  const double atol = integrator_tol;
  const double rtol = integrator_tol;
  const double e0 = total_energy(init.q, init.v, params);
  const double l0 = total_angular_momentum(init.q, init.v, params.mass);

  OdeOracleResult result;
  result.min_separation = state_min_separation(y, n);

  std::vector<double> sample_times(static_cast<size_t>(samples));
  for (int i = 0; i < samples; ++i)
    sample_times[static_cast<size_t>(i)] = period * i / samples;
  std::vector<StateVector> sampled(static_cast<size_t>(samples));
  size_t next_sample = 0;

  double t = 0.0;
  double h = period / 1000.0;
  double energy_dev = 0.0, momentum_dev = 0.0;
  int rejected_in_a_row = 0;

  while (t < period * (1.0 - 1e-14)) {
    h = std::min(h, period - t);
    const Dopri5Step step = dopri5_step(y, k1, h, params, atol, rtol);
    if (step.error > 1.0) {
      h *= std::max(0.2, 0.9 * std::pow(step.error, -0.2));
      if (++rejected_in_a_row > 60)
        throw Error("ode_oracle: step size collapsed");
      continue;
    }
    rejected_in_a_row = 0;

    // Dense output through the accepted step: samples + separation monitor.
    while (next_sample < sampled.size() &&
           sample_times[next_sample] < t + h - 1e-15 * period) {
      const double theta = (sample_times[next_sample] - t) / h;
      sampled[next_sample] = step.interpolate(theta);
      ++next_sample;
    }
    for (double theta : {0.25, 0.5, 0.75, 1.0}) {
      const StateVector yi = theta == 1.0 ? step.y1 : step.interpolate(theta);
      const double sep = state_min_separation(yi, n);
      result.min_separation = std::min(result.min_separation, sep);
      if (sep < rho_min) throw IntegratorCollision(t + theta * h, sep);
    }

    t += h;
    y = step.y1;
    k1 = step.k_last;
    ++result.steps;

    const NBodyState s = unpack_state(y);
    energy_dev = std::max(energy_dev, std::abs(total_energy(s.q, s.v, params) - e0));
    momentum_dev = std::max(
        momentum_dev, std::abs(total_angular_momentum(s.q, s.v, params.mass) - l0));

    h *= std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(step.error, 1e-10), -0.2)));
  }

  while (next_sample < sampled.size()) sampled[next_sample++] = y;

  // Return error against the rotated initial configuration.
  const NBodyState final_state = unpack_state(y);
  const Mat2 frame = symmetry::rotation(params.Omega * period);
  for (int b = 0; b < n; ++b) {
    const Vec2 predicted = frame * init.q[static_cast<size_t>(b)];
    result.period_return_error = std::max(
        result.period_return_error,
        (final_state.q[static_cast<size_t>(b)] - predicted).norm());
  }
  result.energy_drift = std::abs(e0) > 0.0 ? energy_dev / std::abs(e0) : energy_dev;
  result.momentum_drift = std::abs(l0) > 1e-12 ? momentum_dev / std::abs(l0) : momentum_dev;

  // Sampled trajectories: inertial and rotated-back frames.
  Configuration inertial;
  inertial.n = n;
  inertial.period = period;
  inertial.times = sample_times;
  inertial.positions.assign(static_cast<size_t>(n), {});
  for (auto& body : inertial.positions) body.resize(static_cast<size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const NBodyState s = unpack_state(sampled[static_cast<size_t>(i)]);
    for (int b = 0; b < n; ++b)
      inertial.positions[static_cast<size_t>(b)][static_cast<size_t>(i)] =
          s.q[static_cast<size_t>(b)];
  }
  inertial.min_separation = dynamics::min_separation(inertial);

  Configuration rotating = inertial;
  for (int i = 0; i < samples; ++i) {
    const Mat2 back = symmetry::rotation(-params.Omega * sample_times[static_cast<size_t>(i)]);
    for (int b = 0; b < n; ++b)
      rotating.positions[static_cast<size_t>(b)][static_cast<size_t>(i)] =
          back * inertial.positions[static_cast<size_t>(b)][static_cast<size_t>(i)];
  }
  rotating.min_separation = dynamics::min_separation(rotating);

  result.inertial = std::move(inertial);
  result.rotating = std::move(rotating);
  return result;
}

double choreography_check(const Configuration& config, const SymmetrySpec& spec) {
  const int m = config.grid_size();
  if (m % spec.n != 0)
    throw std::invalid_argument(
        "choreography_check: grid size must be divisible by n");
  const int stride = m / spec.n;
  double dev = 0.0;
  for (int b = 0; b < spec.n; ++b) {
    const Mat2 rot = symmetry::rotation(2.0 * std::numbers::pi * b / spec.n);
    for (int jdx = 0; jdx < m; ++jdx) {
      const Vec2 expected =
          rot * config.positions[0][static_cast<size_t>((jdx + b * stride) % m)];
      dev = std::max(dev, (config.positions[static_cast<size_t>(b)][static_cast<size_t>(jdx)] -
                           expected)
                              .norm());
    }
  }
  return dev;
}

double total_energy(const std::vector<Vec2>& q, const std::vector<Vec2>& v,
                    const PhysicalParams& params) {
  const int n = static_cast<int>(q.size());
  double kinetic = 0.0;
  for (const auto& vi : v) kinetic += 0.5 * params.mass * vi.squaredNorm();
  double potential = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double r = (q[static_cast<size_t>(i)] - q[static_cast<size_t>(j)]).norm();
      potential -= params.mass * params.mass / (params.alpha * std::pow(r, params.alpha));
    }
  return kinetic + potential;
}

double total_angular_momentum(const std::vector<Vec2>& q, const std::vector<Vec2>& v,
                              double mass) {
  double l = 0.0;
  for (size_t i = 0; i < q.size(); ++i)
    l += mass * (q[i].x() * v[i].y() - q[i].y() * v[i].x());
  return l;
}

}  // namespace verify
}  // namespace choreo
