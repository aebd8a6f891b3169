#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "choreo/symmetry.hpp"
#include "test_helpers.hpp"

using namespace choreo;
using namespace choreo::symmetry;
using choreo::testing::kTwoPi;

TEST_CASE("rotation matrices") {
  CHECK((rotation(0.0) - Mat2::Identity()).norm() == 0.0);
  CHECK((rotation(kTwoPi / 4.0) - j_matrix()).norm() < 1e-15);
  const Vec2 v = rotation(kTwoPi / 3.0) * Vec2(1.0, 0.0);
  CHECK(v.x() == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(v.y() == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-15));
  const Mat2 r = rotation(0.813);
  CHECK((r * r.transpose() - Mat2::Identity()).norm() < 1e-15);
  CHECK(r.determinant() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("orbit decomposition worked cases") {
  const auto a = orbit_decomposition(3, 4);
  CHECK(a.d == 1);
  CHECK(a.orbit_count == 1);
  CHECK(a.orbit_size == 3);
  REQUIRE(a.orbits.size() == 1);
  CHECK(a.orbits[0] == std::vector<int>{0, 1, 2});

  const auto b = orbit_decomposition(4, 2);
  CHECK(b.d == 2);
  CHECK(b.orbit_count == 2);
  CHECK(b.orbit_size == 2);

  const auto c = orbit_decomposition(6, 6);
  CHECK(c.d == 6);
  CHECK(c.orbit_count == 6);
  CHECK(c.orbit_size == 1);

  CHECK_THROWS_AS(orbit_decomposition(2, 1), std::invalid_argument);
  CHECK_THROWS_AS(orbit_decomposition(5, 0), std::invalid_argument);
}

TEST_CASE("orbit decomposition matches the defining cyclic action") {
  for (int n = 3; n <= 12; ++n) {
    for (int w = 1; w <= 40; ++w) {
      const auto dec = orbit_decomposition(n, w);
      CHECK(dec.d == std::gcd(w, n));
      CHECK(static_cast<int>(dec.orbits.size()) == dec.orbit_count);
      std::set<int> all;
      for (const auto& orbit : dec.orbits) {
        CHECK(static_cast<int>(orbit.size()) == dec.orbit_size);
        for (const int j : orbit) {
          all.insert(j);
          // each orbit is closed under j -> j + W (mod n)
          const int next = (j + w) % n;
          CHECK(std::find(orbit.begin(), orbit.end(), next) != orbit.end());
        }
      }
      CHECK(static_cast<int>(all.size()) == n);
    }
  }
}

TEST_CASE("admissible mode lattice") {
  const SymmetrySpec s3(3, 4, kTwoPi);
  CHECK(admissible_modes(s3, -2, 2) == std::vector<int>{-5, -2, 1, 4, 7});
  const SymmetrySpec s5(5, 11, kTwoPi);
  CHECK(admissible_modes(s5, 0, 2) == std::vector<int>{1, 6, 11});
  CHECK(admissible_modes(s3, 0, 0) == std::vector<int>{1});
  CHECK_THROWS_AS(admissible_modes(s3, 1, 0), std::invalid_argument);

  const auto lattice = lattice_modes(3, 8);
  CHECK(lattice == std::vector<int>{-8, -5, -2, 1, 4, 7});
}

TEST_CASE("projection keeps the counterclockwise circle for every n") {
  FourierCurve circle(kTwoPi, 4);
  circle.set_coeff(1, Vec2c(Complex(0.5, 0.0), Complex(0.0, -0.5)));
  for (int n : {3, 4, 5, 7}) {
    const SymmetrySpec spec(n, 1, kTwoPi);
    const FourierCurve p = project_symmetry(circle, spec);
    CHECK((p - circle).norm_l2() < 1e-15);
  }
}

TEST_CASE("projection zeroes inadmissible scalar modes") {
  const SymmetrySpec spec(3, 1, kTwoPi);
  // scalar mode +2 is not on the lattice for n = 3 ...
  FourierCurve plus2 = FourierCurve::from_scalar_modes(kTwoPi, 4, {{2, Complex(1.0, 0.0)}});
  CHECK(project_symmetry(plus2, spec).is_zero(1e-16));
  // ... while scalar mode -2 = 1 - 3 is (the spec's own lattice contains it).
  FourierCurve minus2 = FourierCurve::from_scalar_modes(kTwoPi, 4, {{-2, Complex(1.0, 0.0)}});
  CHECK((project_symmetry(minus2, spec) - minus2).norm_l2() < 1e-15);
}

TEST_CASE("projection is idempotent") {
  std::mt19937_64 rng(17);
  for (int n : {3, 4, 5, 6}) {
    const SymmetrySpec spec(n, 1, kTwoPi);
    for (int rep = 0; rep < 5; ++rep) {
      const FourierCurve u = testing::random_curve(rng, kTwoPi, 32);
      const FourierCurve p = project_symmetry(u, spec);
      const FourierCurve pp = project_symmetry(p, spec);
      CHECK((pp - p).norm_l2() < 1e-14);
    }
  }
}

TEST_CASE("projected curves satisfy the dihedral identities on a grid") {
  std::mt19937_64 rng(19);
  for (int n : {3, 4, 6}) {
    const SymmetrySpec spec(n, 1, kTwoPi);
    const FourierCurve p = project_symmetry(testing::random_curve(rng, kTwoPi, 32), spec);
    const Mat2 rot = rotation(kTwoPi / n);
    const Mat2 s = s_matrix();
    double dev_shift = 0.0, dev_reflect = 0.0;
    const int m = 512;
    for (int j = 0; j < m; ++j) {
      const double t = kTwoPi * j / m;
      dev_shift = std::max(dev_shift,
                           (p.evaluate(t + kTwoPi / n) - rot * p.evaluate(t)).norm());
      dev_reflect = std::max(dev_reflect, (p.evaluate(-t) - s * p.evaluate(t)).norm());
    }
    CHECK(dev_shift < 1e-12);
    CHECK(dev_reflect < 1e-12);
  }
}

TEST_CASE("winding of pure admissible modes equals the mode index") {
  const SymmetrySpec spec(3, 1, kTwoPi);
  for (const int k : lattice_modes(3, 8)) {
    const FourierCurve c =
        FourierCurve::from_scalar_modes(kTwoPi, 8, {{k, Complex(1.0, 0.0)}});
    CHECK(winding_number(c, 64, 1e-6) == k);
  }
}

TEST_CASE("winding worked examples") {
  // u = (cos 3t, sin 3t): scalar mode +3.
  const FourierCurve three =
      FourierCurve::from_scalar_modes(kTwoPi, 4, {{3, Complex(1.0, 0.0)}});
  CHECK(winding_number(three, 64, 1e-6) == 3);
  // reversed orientation: (cos t, -sin t) = scalar mode -1.
  const FourierCurve reversed =
      FourierCurve::from_scalar_modes(kTwoPi, 2, {{-1, Complex(1.0, 0.0)}});
  CHECK(winding_number(reversed, 64, 1e-6) == -1);
  // dominant mode wins: 2 e^{it} + 0.3 e^{4it}.
  const FourierCurve mixed = FourierCurve::from_scalar_modes(
      kTwoPi, 8, {{1, Complex(2.0, 0.0)}, {4, Complex(0.3, 0.0)}});
  CHECK(winding_number(mixed, 64, 1e-6) == 1);
}

TEST_CASE("winding guards") {
  const FourierCurve circle =
      FourierCurve::from_scalar_modes(kTwoPi, 2, {{1, Complex(1.0, 0.0)}});
  CHECK_THROWS_AS(winding_number(circle, 64, 1.0), OriginTooClose);
  // passes within 1e-14 of the origin at an off-grid phase: the angular jump
  // there cannot be resolved below the grid cap.
  const FourierCurve grazing = FourierCurve::from_scalar_modes(
      kTwoPi, 2,
      {{1, Complex(1.0, 0.0)}, {2, std::polar(1.0 - 1e-14, 0.7)}});
  CHECK_THROWS_AS(winding_number(grazing, 64, 0.0), UnresolvedWinding);
}

TEST_CASE("separation lower bound anchors are exact") {
  CHECK(separation_lower_bound(3, 1.0) == std::sqrt(3.0));
  CHECK(separation_lower_bound(6, 1.0) == 1.0);
  CHECK(separation_lower_bound(4, 2.0) == 2.0 * std::sqrt(2.0));
  CHECK_THROWS_AS(separation_lower_bound(3, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(separation_lower_bound(2, 1.0), std::invalid_argument);
}

TEST_CASE("pairwise separation formula worked examples") {
  auto unit = [](double) { return 1.0; };
  CHECK(pairwise_separation_exact(unit, 3, 1, 1, 0.77) ==
        doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  CHECK(pairwise_separation_exact(unit, 4, 1, 2, 1.3) == doctest::Approx(2.0).epsilon(1e-15));
  auto rho = [](double s) { return 1.0 + 0.1 * std::cos(3.0 * s); };
  CHECK(pairwise_separation_exact(rho, 3, 2, 1, 0.0) ==
        doctest::Approx(1.1 * std::sqrt(3.0)).epsilon(1e-14));
  CHECK_THROWS_AS(pairwise_separation_exact(unit, 3, 1, 3, 0.0), std::invalid_argument);
}

TEST_CASE("pairwise separation cross-check against the explicit construction") {
  // q_k(t) = R_{2 pi k/n} gamma(W t + 2 pi k/n), gamma = rho(s)(cos s, sin s).
  auto rho = [](double s) { return 1.0 + 0.1 * std::cos(3.0 * s); };
  const int n = 3, w = 2;
  auto body = [&](int k, double t) -> Vec2 {
    const double s = w * t + kTwoPi * k / n;
    return rotation(kTwoPi * k / n) * (rho(s) * Vec2(std::cos(s), std::sin(s)));
  };
  for (double t : {0.0, 0.4, 1.9}) {
    const double measured = (body(1, t) - body(0, t)).norm();
    CHECK(measured ==
          doctest::Approx(pairwise_separation_exact(rho, n, w, 1, t)).epsilon(1e-13));
  }
}

TEST_CASE("pairwise separation multiset matches the construction for odd n") {
  auto rho = [](double s) { return 1.0 + 0.05 * std::cos(5.0 * s); };
  const int n = 5, w = 1;
  auto body = [&](int k, double t) -> Vec2 {
    const double s = w * t + kTwoPi * k / n;
    return rotation(kTwoPi * k / n) * (rho(s) * Vec2(std::cos(s), std::sin(s)));
  };
  for (double t : {0.0, 0.7}) {
    std::multiset<double> measured, formula;
    for (int k = 1; k < n; ++k) {
      measured.insert(std::round(1e12 * (body(k, t) - body(0, t)).norm()));
      formula.insert(std::round(1e12 * pairwise_separation_exact(rho, n, w, k, t)));
    }
    CHECK(measured == formula);
  }
}

TEST_CASE("spec invariants") {
  CHECK(SymmetrySpec(3, 4, kTwoPi).is_choreography());
  CHECK_FALSE(SymmetrySpec(4, 2, kTwoPi).is_choreography());
  CHECK_THROWS_AS(SymmetrySpec(2, 1, kTwoPi), std::invalid_argument);
  CHECK_THROWS_AS(SymmetrySpec(3, 0, kTwoPi), std::invalid_argument);
  CHECK_THROWS_AS(SymmetrySpec(3, 1, 0.0), std::invalid_argument);
}
