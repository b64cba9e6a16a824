#pragma once

#include <array>
#include <functional>
#include <vector>

#include "nhnc/phasepoly.hpp"

namespace nhnc {

// Deformation constants of the two-mode noncommutative algebra
//   [q_k, q_l] = i theta eps_kl,  [q_k, p_l] = i hbar delta_kl,
//   [p_k, p_l] = i zeta eps_kl,   eps_12 = +1.
class AlgebraParams {
 public:
  AlgebraParams(double hbar, double theta, double zeta);

  double hbar() const { return hbar_; }
  double theta() const { return theta_; }
  double zeta() const { return zeta_; }
  // theta * zeta / hbar^2; the Seiberg-Witten inverse needs this below 1.
  double deformation_ratio() const { return theta_ * zeta_ / (hbar_ * hbar_); }
  bool is_commutative() const { return theta_ == 0.0 && zeta_ == 0.0; }

  // theta_{kl} and zeta_{kl} with 0-based mode indices.
  double theta_kl(int k, int l) const;
  double zeta_kl(int k, int l) const;

  static constexpr int n_modes = 2;
  static constexpr int dimension = 4;

 private:
  double hbar_;
  double theta_;
  double zeta_;
};

// Antisymmetric 4x4 matrix Omega, variable order (q1, q2, p1, p2), such that
// [z_a, z_b]_star = i Omega_ab.
struct DeformationMatrix {
  std::array<std::array<double, 4>, 4> omega{};

  double operator()(int a, int b) const { return omega[a][b]; }
  // Omega * v for a complex vector.
  std::vector<Complex> apply(std::span<const Complex> v) const;
};

DeformationMatrix deformation_matrix(const AlgebraParams& alg);

// prefactor * exp(coeffs . z)
struct ExpLinear {
  std::vector<Complex> coeffs;
  Complex prefactor{1.0};

  static ExpLinear identity(int dimension);
  Complex eval(std::span<const Complex> z) const;
};

// prefactor * exp(coeffs . z) * poly(z)
struct ExpPoly {
  ExpLinear exponential;
  PhaseSymbol poly;

  Complex eval(std::span<const Complex> z) const;
};

// f * g through the terminating bidifferential series
// exp[(i/2) <-d^T Omega d->].
PhaseSymbol star_product(const PhaseSymbol& f, const PhaseSymbol& g, const AlgebraParams& alg);
PhaseSymbol star_commutator(const PhaseSymbol& f, const PhaseSymbol& g, const AlgebraParams& alg);

ExpLinear exp_star_exp(const ExpLinear& a, const ExpLinear& b, const AlgebraParams& alg);

// exp(a.z) * f * exp(-a.z) = f(z - i Omega a). The ExpLinear prefactor
// cancels.
PhaseSymbol star_conjugate(const ExpLinear& a, const PhaseSymbol& f, const AlgebraParams& alg);
// Conjugation by a star product of exponential factors: the shifts add.
PhaseSymbol star_conjugate(std::span<const ExpLinear> factors, const PhaseSymbol& f,
                           const AlgebraParams& alg);

// e * f = e(z) f(z - (i/2) Omega a) and f * e = e(z) f(z + (i/2) Omega a).
ExpPoly exp_star_poly(const ExpLinear& e, const PhaseSymbol& f, const AlgebraParams& alg);
ExpPoly poly_star_exp(const PhaseSymbol& f, const ExpLinear& e, const AlgebraParams& alg);

// Partial derivatives of a smooth function at one point, indexed by exponent
// multi-index (the derivative order per variable).
using DerivativeJet = std::function<Complex(const Exponents&)>;

// Value of (f * g)(z) for a polynomial f and a smooth g given through its
// derivatives at z. Exact because the series terminates at order deg f.
Complex star_product_at(const PhaseSymbol& f, const DerivativeJet& g_derivatives,
                        std::span<const Complex> z, const AlgebraParams& alg);

}  // namespace nhnc
