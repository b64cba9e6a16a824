#pragma once

#include <cmath>
#include <random>

#include "nhnc/phasepoly.hpp"

namespace testing {

inline const nhnc::VariableOrder kOrder(2);
enum Var { q1 = 0, q2 = 1, p1 = 2, p2 = 3 };

inline nhnc::PhaseSymbol var(int a, nhnc::Complex c = 1.0) { return nhnc::PhaseSymbol::variable(kOrder, a, c); }
inline nhnc::PhaseSymbol cst(nhnc::Complex c) { return nhnc::PhaseSymbol::constant(kOrder, c); }
inline nhnc::PhaseSymbol mono(std::initializer_list<int> e, nhnc::Complex c = 1.0) {
  return nhnc::PhaseSymbol::monomial(kOrder, nhnc::Exponents(e.begin(), e.end()), c);
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}
inline std::vector<nhnc::Complex> random_point(std::mt19937_64& rng, double r = 1.0) {
  std::vector<nhnc::Complex> z(4);
  for (auto& v : z) v = {uniform(rng, -r, r), uniform(rng, -r, r)};
  return z;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace testing
