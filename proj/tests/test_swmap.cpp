#include <doctest.h>

#include <Eigen/Dense>

#include "common.hpp"
#include "nhnc/errors.hpp"
#include "nhnc/suites.hpp"
#include "nhnc/swmap.hpp"

using namespace nhnc;
using namespace testing;

TEST_CASE("constraint root") {
  CHECK(solve_constraint(AlgebraParams(1.0, 0.0, 0.0), 1.0) == 1.0);
  const AlgebraParams alg(1.0, 1.0, 0.75);  // theta zeta / hbar^2 = 3/4
  const double nu = solve_constraint(alg, 1.0);
  CHECK(nu == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(SWParams(1.0, nu, alg).constraint_residual() < 1e-12);
  CHECK_THROWS_AS(AlgebraParams(1.0, 1.0, 1.0), InvalidAlgebra);
  CHECK_THROWS_AS(SWParams(1.0, 0.5, AlgebraParams(1.0, 0.1, 0.1)), InvalidAlgebra);
}

TEST_CASE("commutative limit is the identity") {
  const SWParams sw = SWParams::from_mu(AlgebraParams(1.7, 0.0, 0.0), 1.0);
  CHECK(max_abs_diff(forward_map(sw), LinearPhaseMap::identity()) == 0.0);
  CHECK(max_abs_diff(inverse_map(sw), LinearPhaseMap::identity()) == 0.0);
  Rng rng(1);
  const auto f = random_symbol(rng, 3, 5);
  CHECK(max_coeff_diff(substitute(f, forward_map(sw)), f) == 0.0);
}

TEST_CASE("forward map entries read directly") {
  const AlgebraParams alg(1.2, 0.3, -0.2);
  const SWParams sw = SWParams::from_mu(alg, 1.1);
  const auto q1_mapped = substitute(var(q1), forward_map(sw));
  const auto expected = var(q1, sw.nu()) + var(p2, -0.3 / (2.0 * sw.nu() * 1.2));
  CHECK(max_coeff_diff(q1_mapped, expected) < 1e-15);
}

TEST_CASE("mapped canonical variables realise the deformed algebra") {
  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    const auto alg = random_algebra(rng);
    CHECK(sw_realizes_algebra_check(SWParams::from_mu(alg, 0.5 + t * 0.1)).passed);
  }
}

TEST_CASE("round trips and closed-form inverse") {
  Rng rng(5);
  for (int t = 0; t < 30; ++t) {
    const auto sw = SWParams::from_mu(random_algebra(rng), 0.6 + 0.05 * t);
    CHECK(sw_constraint_check(sw).passed);
    CHECK(sw_round_trip_check(sw).passed);
    CHECK(sw_inverse_check(sw).passed);
    const auto fwd = forward_map(sw), inv = inverse_map(sw);
    CHECK(max_abs_diff(fwd.compose(inv), LinearPhaseMap::identity()) < 1e-12);
    const auto f = random_symbol(rng, 4, 6);
    CHECK(max_coeff_diff(substitute(substitute(f, fwd), inv), f) < 1e-10);
  }
}

TEST_CASE("substitution agrees with evaluation at the mapped point") {
  Rng rng(6);
  std::mt19937_64 prng(6);
  const auto sw = SWParams::from_mu(AlgebraParams(0.8, 0.4, 0.5), 1.3);
  const auto map = forward_map(sw);
  const auto f = random_symbol(rng, 4, 8);
  for (int t = 0; t < 20; ++t) {
    const auto z = random_point(prng);
    std::vector<Complex> mz(4, 0.0);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) mz[r] += map(r, c) * z[c];
    CHECK(std::abs(eval(substitute(f, map), z) - eval(f, mz)) < 1e-12);
  }
}

TEST_CASE("jacobian is the determinant") {
  const auto sw = SWParams::from_mu(AlgebraParams(1.0, 0.3, 0.6), 0.9);
  const auto map = forward_map(sw);
  Eigen::Matrix4d m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = map(r, c);
  CHECK(map.jacobian() == doctest::Approx(m.determinant()).epsilon(1e-13));
}

TEST_CASE("small deformation approaches the mu, nu scaling") {
  const double eps = 1e-9;
  const auto sw = SWParams::from_mu(AlgebraParams(1.0, eps, eps), 2.0);
  const auto map = forward_map(sw);
  CHECK(map(q1, q1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(map(p1, p1) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(map(q1, p2)) < 1e-8);
}

TEST_CASE("matrix CSV rendering") {
  const auto csv = render_csv(LinearPhaseMap::identity());
  CHECK(csv.rfind("1.0000000000000000e+00,0.0000000000000000e+00,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}
