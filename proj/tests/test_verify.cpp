#include <doctest.h>

#include <cmath>
#include <random>

#include "choreo/solver.hpp"
#include "choreo/verify.hpp"
#include "test_helpers.hpp"

using namespace choreo;
using namespace choreo::verify;
using choreo::testing::kTwoPi;

TEST_CASE("fd oracle accuracy and convergence order") {
  std::mt19937_64 rng(131);
  const FourierCurve u = testing::random_curve(rng, kTwoPi, 12);

  CHECK(fd_operator_oracle(u, 0.37, 4096, 4) < 1e-6);

  // low-frequency pure mode: far below the target
  FourierCurve circle(kTwoPi, 2);
  circle.set_coeff(1, Vec2c(Complex(0.5, 0.0), Complex(0.0, -0.5)));
  CHECK(fd_operator_oracle(circle, 0.0, 4096, 4) < 1e-10);

  // order-4 convergence: doubling the grid shrinks the error ~16x
  const double coarse = fd_operator_oracle(u, 0.37, 1024, 4);
  const double fine = fd_operator_oracle(u, 0.37, 2048, 4);
  CHECK(coarse / fine > 10.0);
  CHECK(coarse / fine < 24.0);

  // order-2 stencil is supported and worse
  CHECK(fd_operator_oracle(u, 0.37, 2048, 2) > fine);

  CHECK_THROWS_AS(fd_operator_oracle(u, 0.0, 64, 4), std::invalid_argument);
}

TEST_CASE("ode oracle on the relative equilibrium") {
  const auto re = solver::relative_equilibrium(3, 1.0, 1.0, 1.0);
  const SymmetrySpec spec(3, 1, re.curve.period());
  const PhysicalParams params(1.0, 1.0, 3, re.Omega);
  const auto result = ode_oracle(re.curve, params, spec, 1e-10);
  CHECK(result.period_return_error < 1e-6);
  CHECK(result.energy_drift < 1e-8);
  CHECK(result.momentum_drift < 1e-8);
  CHECK(result.min_separation == doctest::Approx(std::sqrt(3.0)).epsilon(1e-6));
  CHECK(choreography_check(result.rotating, spec) < 1e-5);
}

TEST_CASE("ode oracle flags a corrupted solution") {
  const auto re = solver::relative_equilibrium(3, 1.0, 1.0, 1.0);
  const SymmetrySpec spec(3, 1, re.curve.period());
  const PhysicalParams params(1.0, 1.0, 3, re.Omega);
  const double baseline =
      ode_oracle(re.curve, params, spec, 1e-10).period_return_error;

  FourierCurve bad = re.curve;
  bad.set_coeff(1, Vec2c(1.1 * bad.coeff(1)));
  const double corrupted = ode_oracle(bad, params, spec, 1e-10).period_return_error;
  CHECK(corrupted > 1e3 * baseline);
}

TEST_CASE("integrator collision guard") {
  // an aligned pair on a collision course: bodies 1 and 2 share the x axis
  const SymmetrySpec spec(3, 1, kTwoPi);
  const PhysicalParams params(1.0, 1.0, 3, 0.0);
  const FourierCurve tiny =
      FourierCurve::from_scalar_modes(kTwoPi, 4, {{1, Complex(1e-3, 0.0)}});
  CHECK_THROWS_AS(ode_oracle(tiny, params, spec, 1e-10, 0, 1e-2), IntegratorCollision);
}

TEST_CASE("choreography check on built and unrelated configurations") {
  std::mt19937_64 rng(137);
  const SymmetrySpec spec(5, 6, kTwoPi);
  const FourierCurve u = testing::radial_profile_curve(rng, spec);
  const Configuration config = dynamics::build_configuration(u, spec, 5 * 64);
  CHECK(choreography_check(config, spec) < 1e-13);

  Configuration random_config = config;
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (auto& body : random_config.positions)
    for (auto& p : body) p = Vec2(gauss(rng), gauss(rng));
  CHECK(choreography_check(random_config, spec) > 0.5);

  Configuration misaligned = config;
  misaligned.times.pop_back();
  for (auto& body : misaligned.positions) body.pop_back();
  CHECK_THROWS_AS(choreography_check(misaligned, spec), std::invalid_argument);
}

TEST_CASE("integrated trajectories respect the separation bound") {
  std::mt19937_64 rng(139);
  const SymmetrySpec spec(5, 6, kTwoPi);
  const FourierCurve u = testing::radial_profile_curve(rng, spec);
  const PhysicalParams params(1.0, 1.0, 5, 0.0);
  const auto result = ode_oracle(u, params, spec, 1e-10);
  // the generator is not a solution, but over one period the integrated
  // bodies stay near the symmetric class; compare against the bound from the
  // smallest integrated radius
  double r_star = 1e300;
  for (const auto& body : result.inertial.positions)
    for (const auto& p : body) r_star = std::min(r_star, p.norm());
  CHECK(result.inertial.min_separation >=
        symmetry::separation_lower_bound(spec.n, r_star) - 1e-6);
}

TEST_CASE("energy convention gradient consistency") {
  // E = kinetic - (1/alpha) sum m^2 r^-alpha is conserved along integrated
  // motion; verified implicitly by the drift checks, and the force matches
  // -grad of the potential term by finite differences here.
  const PhysicalParams params(1.0, 1.3, 3, 0.0);
  std::vector<Vec2> q = {Vec2(0.4, 0.1), Vec2(-0.6, 0.3), Vec2(0.2, -0.8)};
  std::vector<Vec2> v = {Vec2(0.0, 0.0), Vec2(0.0, 0.0), Vec2(0.0, 0.0)};
  auto potential = [&](const std::vector<Vec2>& pos) {
    return total_energy(pos, v, params);
  };
  const double h = 1e-6;
  for (int i = 0; i < 3; ++i) {
    for (int c = 0; c < 2; ++c) {
      std::vector<Vec2> qp = q, qm = q;
      qp[static_cast<size_t>(i)][c] += h;
      qm[static_cast<size_t>(i)][c] -= h;
      const double grad = (potential(qp) - potential(qm)) / (2.0 * h);
      // force on body i from the pair sum
      double force = 0.0;
      for (int j = 0; j < 3; ++j) {
        if (j == i) continue;
        const Vec2 d = q[static_cast<size_t>(j)] - q[static_cast<size_t>(i)];
        force += params.mass * params.mass * d[c] /
                 std::pow(d.norm(), params.alpha + 2.0);
      }
      CHECK(-grad == doctest::Approx(force).epsilon(1e-6));
    }
  }
}
