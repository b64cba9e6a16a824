#include <doctest.h>

#include "common.hpp"
#include "nhnc/dyson.hpp"
#include "nhnc/errors.hpp"
#include "nhnc/oscillator.hpp"
#include "nhnc/suites.hpp"

using namespace nhnc;
using namespace testing;

namespace {

OscillatorParams sample_osc() {
  OscillatorParams o;
  o.m = 1.3;
  o.omega = {0.9, 1.6};
  o.gamma = {0.2, -0.35};
  o.delta = {0.3, -0.25};
  o.hbar = 1.1;
  return o;
}

}  // namespace

TEST_CASE("hermitian model needs no Dyson map") {
  auto o = sample_osc();
  o.delta = {0.0, 0.0};
  const auto d = hermiticity_constraints(o, AlgebraParams(1.1, 0.2, 0.3), DysonPhases{{0.4, 0.1}, {0.2, -0.3}});
  for (int i = 0; i < 2; ++i) {
    CHECK(d.A(i).real() == 0.0);
    CHECK(d.B(i).real() == 0.0);
  }
  const auto theta = metric_weyl(DysonParams::zero(), AlgebraParams(1.0, 0.1, 0.1));
  CHECK(theta.prefactor == Complex{1.0});
  for (auto c : theta.coeffs) CHECK(c == Complex{});
}

TEST_CASE("commutative constraint") {
  const auto o = sample_osc();
  const auto d = hermiticity_constraints(o, AlgebraParams(o.hbar, 0.0, 0.0), DysonPhases{});
  for (int i = 0; i < 2; ++i) {
    CHECK(d.B(i).real() == doctest::Approx(o.delta[i].real() / (o.m * o.omega[i] * o.omega[i] * o.hbar)));
    CHECK(d.A(i).real() == 0.0);
  }
}

TEST_CASE("zero map leaves the symbol unchanged") {
  const auto h = build_h_nhnc(sample_osc());
  CHECK(max_coeff_diff(conjugate_hamiltonian(h, DysonParams::zero(), AlgebraParams(1.1, 0.3, 0.2)), h) == 0.0);
}

TEST_CASE("imaginary delta is already Hermitian") {
  auto o = sample_osc();
  o.delta = {Complex{0, 0.3}, Complex{0, -0.2}};
  // i (i d~) q = -d~ q: real coefficients throughout
  CHECK(max_abs_imag(build_h_nhnc(o)) == 0.0);
}

TEST_CASE("quasi-Hermiticity and the hand-coded form on 100 random draws") {
  Rng rng(100);
  double worst_imag = 0.0, worst_diff = 0.0, worst_appendix = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto alg = random_algebra(rng);
    const auto osc = random_oscillator(rng, alg.hbar());
    const auto d = hermiticity_constraints(osc, alg, random_phases(rng));
    const auto h = conjugate_hamiltonian(build_h_nhnc(osc), d, alg);
    worst_imag = std::max(worst_imag, max_abs_imag(h));
    worst_diff = std::max(worst_diff, max_coeff_diff(h, build_hhnc_hand(osc, alg, d)));
    const std::array<double, 2> a{osc.alpha(0), osc.alpha(1)}, b{osc.beta(0), osc.beta(1)};
    worst_appendix = std::max(
        worst_appendix, max_coeff_diff(build_hhnc_appendix(a, b, osc.gamma, osc.delta, alg, d), h));
  }
  CHECK(worst_imag < 1e-10);
  CHECK(worst_diff < 1e-10);
  CHECK(worst_appendix < 1e-10);
}

TEST_CASE("general prefactors stay Hermitian") {
  Rng rng(17);
  for (int t = 0; t < 20; ++t) {
    const auto alg = random_algebra(rng);
    std::array<double, 2> a{0.3 + 0.1 * t, 0.7}, b{0.9, 0.2 + 0.05 * t}, g{0.1, -0.2};
    std::array<Complex, 2> dl{0.4, -0.3};
    const auto d = hermiticity_constraints(a, b, dl, alg, random_phases(rng));
    const auto h = conjugate_hamiltonian(build_h_nhnc_general(a, b, g, dl), d, alg);
    CHECK(max_abs_imag(h) < 1e-10);
    CHECK(max_coeff_diff(h, build_hhnc_appendix(a, b, g, dl, alg, d)) < 1e-10);
  }
}

TEST_CASE("real Dyson coefficients give the plain shifted oscillator") {
  const auto o = sample_osc();
  const AlgebraParams alg(o.hbar, 0.0, 0.0);
  const auto d = hermiticity_constraints(o, alg, DysonPhases{});
  const auto h = conjugate_hamiltonian(build_h_nhnc(o), d, alg);
  PhaseSymbol expected(kOrder);
  for (int i = 0; i < 2; ++i) {
    const double w = o.omega[i], dl = o.delta[i].real();
    expected = expected + mono(i == 0 ? std::initializer_list<int>{0, 0, 2, 0} : std::initializer_list<int>{0, 0, 0, 2},
                               0.5 / o.m) +
               mono(i == 0 ? std::initializer_list<int>{2, 0, 0, 0} : std::initializer_list<int>{0, 2, 0, 0},
                    0.5 * o.m * w * w) +
               var(i == 0 ? p1 : p2, o.gamma[i]) + cst(dl * dl / (2.0 * o.m * w * w));
  }
  CHECK(max_coeff_diff(h, expected) < 1e-12);
  const auto c = hermitian_nc_coeffs(o, alg, DysonPhases{});
  CHECK(c.V[0] == doctest::Approx(o.gamma[0]));
  CHECK(c.V[1] == doctest::Approx(o.gamma[1]));
}

TEST_CASE("metric symbol") {
  const auto o = sample_osc();
  const AlgebraParams alg(o.hbar, 0.2, 0.1);
  const auto d = hermiticity_constraints(o, alg, DysonPhases{});
  const auto theta = metric_weyl(d, alg);
  const auto eta = dyson_weyl(d);
  for (int a = 0; a < 4; ++a) CHECK(std::abs(theta.coeffs[a] - 2.0 * eta.coeffs[a]) < 1e-15);
  CHECK(std::abs(std::abs(theta.prefactor) - 1.0) < 1e-15);
  // Theta * Theta^-1 = 1
  ExpLinear inv = theta;
  for (auto& c : inv.coeffs) c = -c;
  inv.prefactor = 1.0 / theta.prefactor;
  const auto one = exp_star_exp(theta, inv, alg);
  CHECK(std::abs(one.prefactor - 1.0) < 1e-14);
  for (auto c : one.coeffs) CHECK(std::abs(c) < 1e-15);
}

TEST_CASE("phases at pi/2 cannot carry a real part") {
  const auto o = sample_osc();
  CHECK_THROWS_AS(hermiticity_constraints(o, AlgebraParams(o.hbar, 0.0, 0.0),
                                          DysonPhases{{0.0, 0.0}, {std::numbers::pi / 2, 0.0}}),
                  DegenerateAlgebra);
}
