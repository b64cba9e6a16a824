#include <doctest.h>

#include "common.hpp"
#include "nhnc/errors.hpp"
#include "nhnc/fock.hpp"
#include "nhnc/oscillator.hpp"

using namespace nhnc;
using namespace testing;

namespace {

FockConfig cfg_of(int n, double m, std::array<double, 2> w, double hbar) {
  FockConfig c;
  c.cutoff = n;
  c.m = m;
  c.omega = w;
  c.hbar = hbar;
  return c;
}

PhaseSymbol oscillator_symbol(double m, std::array<double, 2> w) {
  return mono({0, 0, 2, 0}, 0.5 / m) + mono({0, 0, 0, 2}, 0.5 / m) + mono({2, 0, 0, 0}, 0.5 * m * w[0] * w[0]) +
         mono({0, 2, 0, 0}, 0.5 * m * w[1] * w[1]);
}

// basis index of |n1, n2>
int idx(int n1, int n2, int n) { return n1 * n + n2; }

}  // namespace

TEST_CASE("quadrature matrices") {
  const auto c = cfg_of(10, 1.3, {0.8, 1.7}, 0.9);
  const auto qm = quadrature_matrices(c);
  const int g = idx(0, 0, 10);
  for (int i = 0; i < 2; ++i) {
    CHECK(std::abs(qm.Q[i](g, g)) == 0.0);
    const Eigen::MatrixXcd qq = qm.Q[i] * qm.Q[i];
    CHECK(qq(g, g).real() == doctest::Approx(0.9 / (2.0 * 1.3 * c.omega[i])).epsilon(1e-14));
    // [Q, P] = i hbar away from the truncation edge
    const Eigen::MatrixXcd comm = qm.Q[i] * qm.P[i] - qm.P[i] * qm.Q[i];
    for (int n1 = 0; n1 < 9; ++n1)
      for (int n2 = 0; n2 < 9; ++n2) {
        const int k = idx(n1, n2, 10);
        CHECK(std::abs(comm(k, k) - Complex{0, 0.9}) < 1e-14);
      }
  }
  const Eigen::MatrixXcd cross = qm.Q[0] * qm.P[1] - qm.P[1] * qm.Q[0];
  CHECK(cross.cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("eigenvalues of explicit matrices") {
  HermitianMatrix id;
  id.data = Eigen::MatrixXcd::Identity(3, 3);
  CHECK(eigenvalues(id, 3) == std::vector<double>{1.0, 1.0, 1.0});
  HermitianMatrix d;
  d.data = Eigen::MatrixXcd::Zero(3, 3);
  d.data.diagonal() << 3.0, 1.0, 2.0;
  const auto ev = eigenvalues(d, 2);
  CHECK(ev[0] == doctest::Approx(1.0));
  CHECK(ev[1] == doctest::Approx(2.0));
  CHECK_THROWS_AS(eigenvalues(d, 4), InvalidParameter);
}

TEST_CASE("two-mode oscillator levels") {
  const auto c = cfg_of(12, 1.0, {1.0, 2.0}, 1.0);
  const auto h = quantize(oscillator_symbol(1.0, {1.0, 2.0}), c);
  CHECK(h.hermiticity_defect() == 0.0);
  const auto ev = eigenvalues(h, 4);
  const std::vector<double> expected{1.5, 2.5, 3.5, 3.5};
  for (int i = 0; i < 4; ++i) CHECK(ev[i] == doctest::Approx(expected[i]).epsilon(1e-13));
}

TEST_CASE("constant symbol is a multiple of the identity") {
  const auto h = quantize(cst(2.5), cfg_of(4, 1.0, {1.0, 1.0}, 1.0));
  CHECK((h.data - 2.5 * Eigen::MatrixXcd::Identity(16, 16)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("same-mode products are exact on the truncated block") {
  // Q^2 built in a larger basis: <n|Q^2|n> = (hbar / 2 m w)(2n + 1) up to the edge
  const auto c = cfg_of(6, 1.0, {1.0, 1.0}, 1.0);
  const auto h = quantize(mono({2, 0, 0, 0}), c);
  for (int n1 = 0; n1 < 6; ++n1) CHECK(h.data(idx(n1, 0, 6), idx(n1, 0, 6)).real() == doctest::Approx(n1 + 0.5));
}

TEST_CASE("bare oscillator converges at the first doubling") {
  const auto r = converged_spectrum(oscillator_symbol(1.0, {1.0, 1.5}), 6, 1e-10, cfg_of(16, 1.0, {1.0, 1.5}, 1.0));
  CHECK(r.cutoff == 32);
  CHECK(r.values[0] == doctest::Approx(1.25).epsilon(1e-14));
}

TEST_CASE("displaced oscillator") {
  // H = P^2/2 + Q^2/2 + 0.5 Q  ->  E0 = 1/2 - 1/8
  const auto sym = oscillator_symbol(1.0, {1.0, 1.0}) + var(q1, 0.5);
  const auto r = converged_spectrum(sym, 3, 1e-10, cfg_of(16, 1.0, {1.0, 1.0}, 1.0));
  CHECK(r.values[0] == doctest::Approx(1.0 - 0.125).epsilon(1e-10));
  const auto mom = ground_state_moments(sym, cfg_of(24, 1.0, {1.0, 1.0}, 1.0));
  CHECK(mom.mean_Q[0] == doctest::Approx(-0.5).epsilon(1e-10));
  CHECK(std::abs(mom.mean_P[0]) < 1e-12);
  CHECK(std::abs(mom.mean_Q[1]) < 1e-12);
}

TEST_CASE("noncommutative point is stable under doubling and basis choice") {
  OscillatorParams o;
  o.omega = {1.0, 1.5};
  o.gamma = {0.2, 0.0};
  o.delta = {0.3, 0.0};
  const AlgebraParams alg(1.0, 0.1, 0.05);
  const auto sw = SWParams::from_mu(alg, 1.0);
  DysonPhases ph;
  ph.A[0] = 0.3;
  const auto h = build_h_hc(o, alg, sw, hermiticity_constraints(o, alg, ph));
  const auto base = FockConfig::for_oscillator(o);
  const auto r = converged_spectrum(h, 6, 1e-8, base, 64);
  CHECK(r.cutoff == 32);
  // frozen reference
  CHECK(r.values[0] == doctest::Approx(1.2759996003196798).epsilon(1e-12));
  // exact normal modes
  const auto nm = normal_mode_spectrum(h, 1.0).levels(6);
  for (int i = 0; i < 6; ++i) CHECK(std::abs(nm[i] - r.values[i]) < 1e-8);
  // a different reference basis gives the same spectrum
  auto other = base;
  other.omega = {1.3, 0.9};
  other.m = 0.8;
  other.cutoff = 32;
  const auto r2 = eigenvalues(quantize(h, other), 6);
  for (int i = 0; i < 6; ++i) CHECK(std::abs(r2[i] - r.values[i]) < 1e-10);
}

TEST_CASE("unsupported input") {
  const auto c = cfg_of(4, 1.0, {1.0, 1.0}, 1.0);
  CHECK_THROWS_AS(quantize(mono({3, 0, 0, 0}), c), UnsupportedSymbol);
  CHECK_THROWS_AS(quantize(var(q1, Complex{0, 1}), c), NonHermitianSymbol);
  CHECK_THROWS_AS(quantize(cst(1.0), cfg_of(1, 1.0, {1.0, 1.0}, 1.0)), InvalidParameter);
  CHECK_THROWS_AS(converged_spectrum(cst(1.0), 1, 1e-8, c, 200), InvalidParameter);
  CHECK_THROWS_AS(converged_spectrum(cst(1.0), 1, 0.0, c), InvalidParameter);
}

TEST_CASE("non-convergence is reported") {
  // a soft mode far from the reference frequency needs a huge basis
  const auto sym = oscillator_symbol(1.0, {1.0, 1.0}) + var(q1, 40.0);
  CHECK_THROWS_AS(converged_spectrum(sym, 4, 1e-12, cfg_of(16, 1.0, {1.0, 1.0}, 1.0), 32), NonConvergence);
}

TEST_CASE("normal modes of random positive quadratics agree with the oracle") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-0.15, 0.15);
  for (int t = 0; t < 4; ++t) {
    const auto sym = oscillator_symbol(1.0, {1.0, 1.4}) + mono({1, 1, 0, 0}, u(rng)) + mono({1, 0, 0, 1}, u(rng)) +
                     mono({0, 1, 1, 0}, u(rng)) + mono({1, 0, 1, 0}, u(rng)) + var(q2, u(rng)) + var(p1, u(rng));
    const auto nm = normal_mode_spectrum(sym, 1.0);
    CHECK(nm.frequencies[0] <= nm.frequencies[1]);
    const auto r = converged_spectrum(sym, 4, 1e-10, cfg_of(16, 1.0, {1.0, 1.4}, 1.0), 64);
    const auto lv = nm.levels(4);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(lv[i] - r.values[i]) < 1e-9);
  }
  CHECK_THROWS_AS(normal_mode_spectrum(mono({3, 0, 0, 0}), 1.0), UnsupportedSymbol);
}
