#pragma once

#include <array>
#include <string>

#include "nhnc/phasepoly.hpp"
#include "nhnc/star.hpp"

namespace nhnc {

// Constraint residual |nu mu (1 - nu mu) - theta zeta / (4 hbar^2)| allowed
// for a valid parameter pair.
inline constexpr double kSWConstraintTolerance = 1e-12;

// nu such that nu*mu = [1 + sqrt(1 - theta zeta / hbar^2)] / 2, the root that
// tends to 1 in the commutative limit.
double solve_constraint(const AlgebraParams& alg, double mu);

// Gauge parameters (mu, nu) of the linear Seiberg-Witten map.
class SWParams {
 public:
  SWParams(double mu, double nu, AlgebraParams alg);
  static SWParams from_mu(const AlgebraParams& alg, double mu);

  double mu() const { return mu_; }
  double nu() const { return nu_; }
  const AlgebraParams& algebra() const { return alg_; }
  double constraint_residual() const;

 private:
  double mu_;
  double nu_;
  AlgebraParams alg_;
};

// 4x4 real map on (q1, q2, p1, p2) coordinates, row-major.
struct LinearPhaseMap {
  std::array<double, 16> matrix{};

  double operator()(int r, int c) const { return matrix[r * 4 + c]; }
  double jacobian() const;
  LinearPhaseMap inverse() const;  // numeric
  LinearPhaseMap compose(const LinearPhaseMap& rhs) const;  // this * rhs
  std::array<double, 4> apply(const std::array<double, 4>& z) const;
  static LinearPhaseMap identity();
};

double max_abs_diff(const LinearPhaseMap& a, const LinearPhaseMap& b);

// (q, p) = M (Q, P) with
//   q_k = nu Q_k - theta_kl P_l / (2 nu hbar),  p_k = mu P_k + zeta_kl Q_l / (2 mu hbar).
LinearPhaseMap forward_map(const SWParams& sw);
// (Q, P) = M (q, p), the closed-form inverse.
LinearPhaseMap inverse_map(const SWParams& sw);

// f(M z): re-expresses a symbol through the variables on the right of M.
PhaseSymbol substitute(const PhaseSymbol& f, const LinearPhaseMap& map);

// Row-major CSV, one matrix row per line.
std::string render_csv(const LinearPhaseMap& map);

}  // namespace nhnc
