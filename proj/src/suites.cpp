#include "nhnc/suites.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nhnc {

namespace {

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

CheckResult make_result(std::string name, double worst, double tol, std::string detail = {}) {
  CheckResult r;
  r.name = std::move(name);
  r.worst = worst;
  r.tolerance = tol;
  r.passed = std::isfinite(worst) && worst < tol;
  r.detail = std::move(detail);
  return r;
}

const VariableOrder kOrder(2);

PhaseSymbol mapped_variable(const LinearPhaseMap& map, int row) {
  PhaseSymbol s(kOrder);
  for (int c = 0; c < 4; ++c) s = s + PhaseSymbol::variable(kOrder, c, map(row, c));
  return s;
}

}  // namespace

AlgebraParams random_algebra(Rng& rng) {
  const double hbar = uniform(rng, 0.5, 2.0);
  const double theta = uniform(rng, -0.9, 0.9) * hbar;
  // |theta zeta| / hbar^2 < 0.9 keeps the inverse map well conditioned.
  const double zeta = uniform(rng, -0.9, 0.9) * hbar;
  return AlgebraParams(hbar, theta, zeta);
}

PhaseSymbol random_symbol(Rng& rng, int max_degree, int n_terms) {
  PhaseSymbol s(kOrder);
  std::uniform_int_distribution<int> var(0, kOrder.dimension() - 1);
  std::uniform_int_distribution<int> deg(0, max_degree);
  for (int t = 0; t < n_terms; ++t) {
    Exponents e(kOrder.dimension(), 0);
    const int d = deg(rng);
    for (int k = 0; k < d; ++k) ++e[var(rng)];
    s = s + PhaseSymbol::monomial(kOrder, e, Complex{uniform(rng, -1, 1), uniform(rng, -1, 1)});
  }
  return s;
}

OscillatorParams random_oscillator(Rng& rng, double hbar) {
  OscillatorParams osc;
  osc.hbar = hbar;
  osc.m = uniform(rng, 0.5, 2.0);
  for (int i = 0; i < 2; ++i) {
    osc.omega[i] = uniform(rng, 0.5, 2.0);
    osc.gamma[i] = uniform(rng, -0.5, 0.5);
    osc.delta[i] = uniform(rng, -0.5, 0.5);
  }
  return osc;
}

DysonPhases random_phases(Rng& rng) {
  DysonPhases ph;
  for (int i = 0; i < 2; ++i) {
    ph.A[i] = uniform(rng, -1.2, 1.2);
    ph.B[i] = uniform(rng, -1.2, 1.2);
  }
  return ph;
}

CheckResult commutator_check(const AlgebraParams& alg) {
  const auto omega = deformation_matrix(alg);
  double worst = 0.0;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const auto c = star_commutator(PhaseSymbol::variable(kOrder, a), PhaseSymbol::variable(kOrder, b), alg);
      const auto expected = PhaseSymbol::constant(kOrder, Complex{0.0, omega(a, b)});
      worst = std::max(worst, max_coeff_diff(c, expected));
    }
  }
  return make_result("star commutators [z_a, z_b] = i Omega_ab", worst, 1e-12);
}

CheckResult associativity_check(const AlgebraParams& alg, Rng& rng, int trials) {
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const auto f = random_symbol(rng, 3, 4), g = random_symbol(rng, 3, 4), h = random_symbol(rng, 3, 4);
    const auto lhs = star_product(star_product(f, g, alg), h, alg);
    const auto rhs = star_product(f, star_product(g, h, alg), alg);
    worst = std::max(worst, max_coeff_diff(lhs, rhs));
  }
  return make_result("star associativity (degree <= 3)", worst, 1e-10,
                     std::to_string(trials) + " random triples");
}

CheckResult sw_constraint_check(const SWParams& sw) {
  return make_result("nu mu (1 - nu mu) = theta zeta / 4 hbar^2", sw.constraint_residual(), 1e-12);
}

CheckResult sw_round_trip_check(const SWParams& sw) {
  const auto fwd = forward_map(sw), inv = inverse_map(sw);
  const double worst = std::max(max_abs_diff(fwd.compose(inv), LinearPhaseMap::identity()),
                                max_abs_diff(inv.compose(fwd), LinearPhaseMap::identity()));
  return make_result("forward/inverse round trip", worst, 1e-10);
}

CheckResult sw_inverse_check(const SWParams& sw) {
  const double worst = max_abs_diff(inverse_map(sw), forward_map(sw).inverse());
  return make_result("closed-form inverse vs numeric inverse", worst, 1e-10);
}

CheckResult sw_commutative_identity_check(double hbar) {
  const AlgebraParams alg(hbar, 0.0, 0.0);
  const SWParams sw = SWParams::from_mu(alg, 1.0);
  const double worst = std::max(max_abs_diff(forward_map(sw), LinearPhaseMap::identity()),
                                max_abs_diff(inverse_map(sw), LinearPhaseMap::identity()));
  return make_result("commutative limit is the identity", worst, 1e-15);
}

CheckResult sw_realizes_algebra_check(const SWParams& sw) {
  const auto& alg = sw.algebra();
  const AlgebraParams canonical(alg.hbar(), 0.0, 0.0);
  const auto omega = deformation_matrix(alg);
  const auto fwd = forward_map(sw);
  double worst = 0.0;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const auto c = star_commutator(mapped_variable(fwd, a), mapped_variable(fwd, b), canonical);
      worst = std::max(worst, max_coeff_diff(c, PhaseSymbol::constant(kOrder, Complex{0.0, omega(a, b)})));
    }
  }
  return make_result("mapped canonical variables satisfy the deformed algebra", worst, 1e-12);
}

std::vector<CheckResult> algebra_property_suite(const AlgebraParams& alg, double mu, Rng& rng) {
  std::vector<CheckResult> out;
  out.push_back(commutator_check(alg));
  out.push_back(associativity_check(alg, rng, 10));
  const SWParams sw = SWParams::from_mu(alg, mu);
  out.push_back(sw_constraint_check(sw));
  out.push_back(sw_round_trip_check(sw));
  out.push_back(sw_inverse_check(sw));
  out.push_back(sw_realizes_algebra_check(sw));
  out.push_back(sw_commutative_identity_check(alg.hbar()));
  // A few extra random algebras around the configured one.
  double worst = 0.0;
  for (int t = 0; t < 5; ++t) {
    const auto r = random_algebra(rng);
    worst = std::max(worst, commutator_check(r).worst);
    worst = std::max(worst, sw_round_trip_check(SWParams::from_mu(r, mu)).worst);
  }
  out.push_back(make_result("random algebras: commutators and round trips", worst, 1e-10));
  return out;
}

}  // namespace nhnc
