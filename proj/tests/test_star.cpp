#include <doctest.h>

#include "common.hpp"
#include "nhnc/errors.hpp"
#include "nhnc/star.hpp"
#include "nhnc/suites.hpp"

using namespace nhnc;
using namespace testing;

namespace {

PhaseSymbol taylor(const std::vector<Complex>& c, int order) {
  PhaseSymbol lin(kOrder);
  for (int i = 0; i < 4; ++i) lin = lin + var(i, c[i]);
  PhaseSymbol out = cst(1.0), term = cst(1.0);
  for (int n = 1; n <= order; ++n) {
    term = scale(pointwise_mul(term, lin), 1.0 / n);
    out = out + term;
  }
  return out;
}

}  // namespace

TEST_CASE("deformation matrix") {
  const auto c = deformation_matrix(AlgebraParams(1.0, 0.0, 0.0));
  CHECK(c(q1, q2) == 0.0);
  CHECK(c(p1, p2) == 0.0);
  CHECK(c(q1, p1) == 1.0);
  CHECK(c(q2, p2) == 1.0);
  const auto o = deformation_matrix(AlgebraParams(1.0, 0.1, 0.2));
  CHECK(o(q1, q2) == 0.1);
  CHECK(o(p1, p2) == 0.2);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) CHECK(o(a, b) + o(b, a) == 0.0);
}

TEST_CASE("algebra validation") {
  CHECK_THROWS_AS(AlgebraParams(0.0, 0.1, 0.1), InvalidAlgebra);
  CHECK_THROWS_AS(AlgebraParams(1.0, 1.0, 1.0), InvalidAlgebra);
  CHECK_NOTHROW(AlgebraParams(1.0, 0.9, -3.0));
}

TEST_CASE("unit is neutral") {
  Rng rng(1);
  const AlgebraParams alg(1.3, 0.2, -0.4);
  const auto f = random_symbol(rng, 4, 6);
  CHECK(max_coeff_diff(star_product(f, cst(1.0), alg), f) == 0.0);
  CHECK(max_coeff_diff(star_product(cst(1.0), f, alg), f) == 0.0);
}

TEST_CASE("coordinate commutators") {
  const AlgebraParams alg(1.0, 0.3, 0.7);
  CHECK(max_coeff_diff(star_commutator(var(q1), var(p1), alg), cst(Complex{0, 1.0})) < 1e-15);
  CHECK(max_coeff_diff(star_commutator(var(q1), var(q2), alg), cst(Complex{0, 0.3})) < 1e-15);
  CHECK(max_coeff_diff(star_commutator(var(p1), var(p2), alg), cst(Complex{0, 0.7})) < 1e-15);
  CHECK(star_commutator(var(q1), var(p2), alg).is_zero());
  Rng rng(2);
  const auto f = random_symbol(rng, 3, 5);
  CHECK(max_abs_coeff(star_commutator(f, f, alg)) < 1e-14);
}

TEST_CASE("commutators over 50 random algebras") {
  Rng rng(50);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) worst = std::max(worst, commutator_check(random_algebra(rng)).worst);
  CHECK(worst < 1e-12);
}

TEST_CASE("associativity on random degree <= 3 symbols") {
  Rng rng(7);
  for (int t = 0; t < 5; ++t) CHECK(associativity_check(random_algebra(rng), rng, 4).passed);
}

TEST_CASE("commutative product is the plain Moyal product") {
  const AlgebraParams alg(0.7, 0.0, 0.0);
  // q p * q p = q^2 p^2 + i hbar q p - (hbar^2/4) ... checked against the explicit series
  const auto qp = mono({1, 0, 1, 0});
  const auto expected = mono({2, 0, 2, 0}) + cst(0.25 * 0.7 * 0.7);
  CHECK(max_coeff_diff(star_product(qp, qp, alg), expected) < 1e-15);
}

TEST_CASE("exponential products") {
  const AlgebraParams alg(1.0, 0.2, 0.1);
  ExpLinear a = ExpLinear::identity(4), b = ExpLinear::identity(4);
  b.coeffs = {0.3, Complex{0, 0.2}, -0.1, 0.5};
  b.prefactor = 2.0;
  a.prefactor = 3.0;
  const auto ab = exp_star_exp(a, b, alg);
  CHECK(std::abs(ab.prefactor - 6.0) < 1e-15);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(ab.coeffs[i] - b.coeffs[i]) == 0.0);
  ExpLinear minus_b = b;
  for (auto& c : minus_b.coeffs) c = -c;
  minus_b.prefactor = 1.0;
  b.prefactor = 1.0;
  const auto one = exp_star_exp(b, minus_b, alg);
  CHECK(std::abs(one.prefactor - 1.0) < 1e-15);
  for (auto c : one.coeffs) CHECK(std::abs(c) == 0.0);
}

TEST_CASE("exp star exp against a truncated Taylor oracle") {
  // exp(a.z) * exp(b.z): the bidifferential series gives the phase
  // exp((i/2) a^T Omega b). Compare with star products of Taylor polynomials.
  const AlgebraParams alg(1.0, 0.3, -0.2);
  const std::vector<Complex> a{0.2, -0.1, 0.15, 0.05}, b{-0.1, 0.2, 0.1, -0.15};
  ExpLinear ea = ExpLinear::identity(4), eb = ExpLinear::identity(4);
  ea.coeffs = a;
  eb.coeffs = b;
  const auto exact = exp_star_exp(ea, eb, alg);
  const auto approx = star_product(taylor(a, 8), taylor(b, 8), alg);
  std::mt19937_64 rng(4);
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    auto z = random_point(rng, 0.5);
    for (auto& v : z) v = v.real();
    worst = std::max(worst, std::abs(exact.eval(z) - eval(approx, z)));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("conjugation by an exponential") {
  const AlgebraParams alg(1.0, 0.0, 0.0);
  Rng rng(9);
  const auto f = random_symbol(rng, 3, 5);
  CHECK(max_coeff_diff(star_conjugate(ExpLinear::identity(4), f, alg), f) == 0.0);
  // exp(lambda p1) * q1 * exp(-lambda p1) = q1 - i hbar lambda
  ExpLinear e = ExpLinear::identity(4);
  e.coeffs[p1] = 0.4;
  CHECK(max_coeff_diff(star_conjugate(e, var(q1), alg), var(q1) + cst(Complex{0, -0.4})) < 1e-15);
  // agrees with g * f * g^-1 built from truncated Taylor series
  const AlgebraParams nc(1.1, 0.2, 0.3);
  ExpLinear g = ExpLinear::identity(4);
  g.coeffs = {0.1, -0.2, Complex{0, 0.3}, 0.05};
  std::vector<Complex> minus(4);
  for (int i = 0; i < 4; ++i) minus[i] = -g.coeffs[i];
  const auto series = star_product(star_product(taylor(g.coeffs, 8), f, nc), taylor(minus, 8), nc);
  const auto shifted = star_conjugate(g, f, nc);
  std::mt19937_64 prng(10);
  for (int t = 0; t < 10; ++t) {
    auto z = random_point(prng, 0.5);
    for (auto& v : z) v = v.real();
    CHECK(std::abs(eval(series, z) - eval(shifted, z)) < 1e-8);
  }
}

TEST_CASE("conjugation is a star automorphism") {
  Rng rng(12);
  const AlgebraParams alg(0.9, 0.25, -0.35);
  ExpLinear a = ExpLinear::identity(4);
  a.coeffs = {Complex{0.1, 0.2}, -0.3, Complex{0, 0.15}, 0.2};
  for (int t = 0; t < 5; ++t) {
    const auto f = random_symbol(rng, 3, 4), g = random_symbol(rng, 3, 4);
    const auto lhs = star_conjugate(a, star_product(f, g, alg), alg);
    const auto rhs = star_product(star_conjugate(a, f, alg), star_conjugate(a, g, alg), alg);
    CHECK(max_coeff_diff(lhs, rhs) < 1e-10);
  }
}

TEST_CASE("pointwise star value against a derivative jet") {
  const AlgebraParams alg(1.0, 0.1, 0.2);
  Rng rng(13);
  const auto f = random_symbol(rng, 3, 5), g = random_symbol(rng, 4, 5);
  const DerivativeJet jet = [&](const Exponents& e) {
    PhaseSymbol d = g;
    for (int a = 0; a < 4; ++a)
      for (int k = 0; k < e[a]; ++k) d = partial(d, a);
    return eval(d, {0.3, -0.2, 0.5, 0.1});
  };
  const std::vector<Complex> z{0.3, -0.2, 0.5, 0.1};
  CHECK(std::abs(star_product_at(f, jet, z, alg) - eval(star_product(f, g, alg), z)) < 1e-12);
}
