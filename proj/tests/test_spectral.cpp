#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/SVD>

#include "choreo/spectral.hpp"
#include "choreo/symmetry.hpp"
#include "choreo/verify.hpp"
#include "test_helpers.hpp"

using namespace choreo;
using namespace choreo::spectral;
using choreo::testing::kTwoPi;

namespace {
const Vec2c v_plus = Vec2c(Complex(1.0, 0.0), Complex(0.0, 1.0)) / std::sqrt(2.0);
const Vec2c v_minus = Vec2c(Complex(1.0, 0.0), Complex(0.0, -1.0)) / std::sqrt(2.0);
}  // namespace

TEST_CASE("mode matrix eigenvalues") {
  const auto m0 = mode_matrix(0, 1.0, 0.7);
  CHECK((m0.matrix - 0.49 * Mat2c::Identity()).norm() < 1e-15);
  CHECK(m0.lambda_plus == doctest::Approx(0.49).epsilon(1e-15));
  CHECK(m0.lambda_minus == doctest::Approx(0.49).epsilon(1e-15));

  const auto m1 = mode_matrix(1, 1.0, 0.5);
  CHECK(m1.lambda_plus == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(m1.lambda_minus == doctest::Approx(2.25).epsilon(1e-15));

  const auto m2 = mode_matrix(2, 1.0, 0.0);
  CHECK((m2.matrix - 4.0 * Mat2c::Identity()).norm() < 1e-15);
}

TEST_CASE("mode matrix diagonalization holds for random parameters") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  for (int rep = 0; rep < 50; ++rep) {
    const double omega = 0.5 + std::abs(unif(rng));
    const double Omega = unif(rng);
    const int k = static_cast<int>(std::lround(unif(rng) * 10.0));
    const auto mm = mode_matrix(k, omega, Omega);
    CHECK((mm.matrix * v_plus - mm.lambda_plus * v_plus).norm() < 1e-12 *
              std::max(1.0, mm.lambda_plus));
    CHECK((mm.matrix * v_minus - mm.lambda_minus * v_minus).norm() < 1e-12 *
              std::max(1.0, mm.lambda_minus));
  }
}

TEST_CASE("spectral projectors") {
  const auto [p_plus, p_minus] = spectral_projectors();
  CHECK((p_plus + p_minus - Mat2c::Identity()).norm() < 1e-15);
  CHECK((p_plus * p_plus - p_plus).norm() < 1e-15);
  CHECK((p_minus * p_minus - p_minus).norm() < 1e-15);
  CHECK((p_plus * p_minus).norm() < 1e-15);
  CHECK((p_plus * v_plus - v_plus).norm() < 1e-15);
  CHECK((p_minus * v_minus - v_minus).norm() < 1e-15);
  const Mat2c s = symmetry::s_matrix().cast<Complex>();
  CHECK((s * p_plus * s - p_minus).norm() < 1e-15);
}

TEST_CASE("apply_L worked examples") {
  // circle with Omega = 0, omega = 1: A_1 = I.
  FourierCurve circle(kTwoPi, 4);
  circle.set_coeff(1, Vec2c(Complex(0.5, 0.0), Complex(0.0, -0.5)));
  CHECK((apply_L(circle, 0.0) - circle).norm_l2() < 1e-15);

  // v_plus polarization at k = 1, Omega = 0.5: multiplied by 0.25.
  FourierCurve vp(kTwoPi, 2);
  vp.set_coeff(1, v_plus);
  const FourierCurve lvp = apply_L(vp, 0.5);
  CHECK((lvp.coeff(1) - 0.25 * v_plus).norm() < 1e-15);
}

TEST_CASE("apply_L matches the finite-difference oracle") {
  std::mt19937_64 rng(41);
  const FourierCurve u = testing::random_curve(rng, kTwoPi, 12);
  CHECK(verify::fd_operator_oracle(u, 0.37, 4096, 4) < 1e-6);
}

TEST_CASE("apply_K worked examples and resonance guard") {
  FourierCurve f(kTwoPi, 4);
  f.set_coeff(2, Vec2c(Complex(1.0, 2.0), Complex(-0.5, 0.25)));
  const FourierCurve kf = apply_K(f, 0.0);
  CHECK((kf.coeff(2) - f.coeff(2) / 4.0).norm() < 1e-15);

  FourierCurve g(kTwoPi, 2);
  g.set_coeff(1, v_minus);
  CHECK((apply_K(g, 0.5).coeff(1) - v_minus / 2.25).norm() < 1e-15);

  CHECK_THROWS_AS(apply_K(g, 1.0), ResonantMode);
  try {
    apply_K(g, 1.0);
  } catch (const ResonantMode& err) {
    CHECK(err.mode == 1);
  }
}

TEST_CASE("L K is the identity on random nonresonant curves") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int rep = 0; rep < 30; ++rep) {
    const double period = 1.0 + 5.0 * unif(rng);
    const double omega = kTwoPi / period;
    const double Omega = (0.5 + 2.0 * unif(rng)) * omega / 7.0 + omega * 0.21;
    const FourierCurve f = testing::random_curve(rng, period, 16);
    const FourierCurve back = apply_L(apply_K(f, Omega), Omega);
    CHECK((back - f).norm_l2() < 1e-12 * f.norm_l2());
  }
}

TEST_CASE("nonresonance check") {
  const auto ok = check_nonresonance(1.0, 0.5, 64, 1e-9);
  CHECK(ok.ok);
  CHECK(ok.offending.empty());

  const auto bad = check_nonresonance(1.0, 3.0, 64, 1e-9);
  CHECK_FALSE(bad.ok);
  CHECK(bad.offending == std::vector<int>{-3, 3});

  const auto close = check_nonresonance(1.0, 3.0 + 1e-12, 64, 1e-9);
  CHECK_FALSE(close.ok);

  CHECK(first_resonant_mode(1.0, 0.0, 64) == 0);
  CHECK(first_resonant_mode(1.0, 2.0, 64) == 2);
}

TEST_CASE("covariant derivative") {
  // the co-rotating polarization of mode 1 is annihilated at Omega = omega.
  FourierCurve u(kTwoPi, 2);
  u.set_coeff(1, v_plus);
  CHECK(covariant_derivative(u, 1.0).norm_l2() < 1e-15);

  // Omega = 0 reduces to the plain derivative.
  std::mt19937_64 rng(47);
  const FourierCurve r = testing::random_curve(rng, kTwoPi, 10);
  const FourierCurve d = covariant_derivative(r, 0.0);
  for (double t : {0.3, 1.8}) {
    CHECK((d.evaluate(t) - r.evaluate_derivative(t, 1)).norm() < 1e-13);
  }

  // L = -D_t^2.
  const double Omega = 0.83;
  const FourierCurve lhs = apply_L(r, Omega);
  const FourierCurve rhs =
      -1.0 * covariant_derivative(covariant_derivative(r, Omega), Omega);
  CHECK((lhs - rhs).norm_l2() < 1e-12 * lhs.norm_l2());
}

TEST_CASE("energy identity and coercivity") {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int rep = 0; rep < 50; ++rep) {
    const double period = 1.0 + 4.0 * unif(rng);
    const double omega = kTwoPi / period;
    const double Omega = 0.95 * omega * (2.0 * unif(rng) - 1.0);
    const FourierCurve u = testing::random_curve(rng, period, 12);

    const double lu_u = inner_product_l2(apply_L(u, Omega), u);
    const double dt = covariant_derivative(u, Omega).norm_l2();
    CHECK(std::abs(lu_u - dt * dt) < 1e-10 * std::max(1.0, dt * dt));

    const double du = u.derivative_norm_l2(1);
    const double c = (1.0 - std::abs(Omega) / omega) * (1.0 - std::abs(Omega) / omega);
    CHECK(lu_u >= c * du * du - 1e-10);
  }
}

TEST_CASE("periodic Poincare inequality with equality on the first modes") {
  std::mt19937_64 rng(59);
  for (int rep = 0; rep < 20; ++rep) {
    const FourierCurve u = testing::random_curve(rng, kTwoPi, 12);
    CHECK(u.norm_l2() <= u.derivative_norm_l2(1) / u.omega() + 1e-12);
  }
  FourierCurve first(kTwoPi, 2);
  first.set_coeff(1, Vec2c(Complex(0.4, 0.2), Complex(-0.3, 0.9)));
  CHECK(first.norm_l2() ==
        doctest::Approx(first.derivative_norm_l2(1) / first.omega()).epsilon(1e-14));
}

TEST_CASE("coercivity constant") {
  CHECK(coercivity_constant(1.0, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(coercivity_constant(1.0, 0.5) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK_THROWS_AS(coercivity_constant(1.0, 1.0), HypothesisViolated);
}

TEST_CASE("inverse operator norm matches the eigenvalue formula") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> unif(0.1, 2.0);
  for (int rep = 0; rep < 20; ++rep) {
    const double omega = unif(rng);
    const double Omega = unif(rng) * 0.45;
    for (int k : {-5, -1, 1, 2, 7, 33}) {
      const auto mm = mode_matrix(k, omega, Omega);
      const Mat2c inv = mm.matrix.inverse();
      const double svd_norm = inv.jacobiSvd().singularValues()(0);
      const double formula = 1.0 / std::min(std::abs(omega * k + Omega) * std::abs(omega * k + Omega),
                                            std::abs(omega * k - Omega) * std::abs(omega * k - Omega));
      CHECK(std::abs(svd_norm - formula) < 1e-12 * formula);
    }
  }
}

TEST_CASE("apply_L preserves the symmetric subspace") {
  std::mt19937_64 rng(67);
  const SymmetrySpec spec(5, 1, kTwoPi);
  const FourierCurve u = testing::random_symmetric_curve(rng, spec, 24);
  const FourierCurve lu = apply_L(u, 0.31);
  CHECK((symmetry::project_symmetry(lu, spec) - lu).norm_l2() < 1e-13);
}
