#pragma once

#include <random>
#include <string>
#include <vector>

#include "nhnc/dyson.hpp"
#include "nhnc/oscillator_params.hpp"
#include "nhnc/phasepoly.hpp"
#include "nhnc/star.hpp"
#include "nhnc/swmap.hpp"

namespace nhnc {

struct CheckResult {
  std::string name;
  bool passed = false;
  double worst = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

// Generators with a caller-owned engine, so every suite is reproducible.
using Rng = std::mt19937_64;

// hbar in [0.5, 2], theta, zeta of either sign with theta zeta / hbar^2 < 0.9.
AlgebraParams random_algebra(Rng& rng);
// n_terms monomials of total degree <= max_degree, coefficients in the unit box.
PhaseSymbol random_symbol(Rng& rng, int max_degree, int n_terms);
// m, w_i in [0.5, 2], gamma_i, delta_i in [-0.5, 0.5] (delta real).
OscillatorParams random_oscillator(Rng& rng, double hbar);
DysonPhases random_phases(Rng& rng);

// [z_a, z_b]_star = i Omega_ab for all pairs.
CheckResult commutator_check(const AlgebraParams& alg);
// (f * g) * h = f * (g * h) on random degree <= 3 symbols.
CheckResult associativity_check(const AlgebraParams& alg, Rng& rng, int trials);

CheckResult sw_constraint_check(const SWParams& sw);
CheckResult sw_round_trip_check(const SWParams& sw);
CheckResult sw_inverse_check(const SWParams& sw);
// theta = zeta = 0, mu = nu = 1 gives the identity map both ways.
CheckResult sw_commutative_identity_check(double hbar);
// The mapped variables q = M (Q, P), multiplied with the canonical (theta =
// zeta = 0) star product, reproduce the deformed commutators i Omega_ab.
CheckResult sw_realizes_algebra_check(const SWParams& sw);

// The check-algebra property suite for one algebra plus rng-drawn extras.
std::vector<CheckResult> algebra_property_suite(const AlgebraParams& alg, double mu, Rng& rng);

}  // namespace nhnc
