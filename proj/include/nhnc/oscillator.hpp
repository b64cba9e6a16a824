#pragma once

#include <array>
#include <string>
#include <vector>

#include "nhnc/dyson.hpp"
#include "nhnc/oscillator_params.hpp"
#include "nhnc/phasepoly.hpp"
#include "nhnc/star.hpp"
#include "nhnc/swmap.hpp"

namespace nhnc {

// sum_i p_i^2/2m + m w_i^2 q_i^2/2 + gamma_i p_i + i delta_i q_i
PhaseSymbol build_h_nhnc(const OscillatorParams& osc);
// sum_i alpha_i p_i^2 + beta_i q_i^2 + gamma_i p_i + i delta_i q_i
PhaseSymbol build_h_nhnc_general(const std::array<double, 2>& alpha,
                                 const std::array<double, 2>& beta,
                                 const std::array<double, 2>& gamma,
                                 const std::array<Complex, 2>& delta);

// Coefficients of the Hermitian commutative Hamiltonian in (Q, P):
//   sum_i p2_i P_i^2 + q2_i Q_i^2 + cross_i {P_i, Q_j} + xi_i P_i + lambda_i Q_i + omega_i
// with j the other mode; {P_i, Q_j} has Weyl symbol 2 P_i Q_j.
struct HHQPCoeffs {
  std::array<double, 2> p2{};
  std::array<double, 2> q2{};
  std::array<double, 2> cross{};
  std::array<double, 2> xi{};
  std::array<double, 2> lambda{};
  std::array<double, 2> omega{};

  PhaseSymbol symbol() const;
};

HHQPCoeffs hhqp_coeffs(const OscillatorParams& osc, const AlgebraParams& alg, const SWParams& sw,
                       const HermitianNCCoeffs& hnc);

// The full pipeline: Dyson conjugation in (q, p), then q = M (Q, P) with the
// forward Seiberg-Witten matrix. The result is expressed in (Q, P).
PhaseSymbol build_h_hc(const OscillatorParams& osc, const AlgebraParams& alg, const SWParams& sw,
                       const DysonParams& d);
// Hand-coded counterpart assembled from hhqp_coeffs.
PhaseSymbol build_h_hc_hand(const OscillatorParams& osc, const AlgebraParams& alg,
                             const SWParams& sw, const DysonParams& d);

// General-prefactor commutative coefficients F_i, G_i, H_i, I_i, K_i, L_i
// (H multiplies {P_i, Q_j}).
struct AppendixHCCoeffs {
  std::array<double, 2> F{}, G{}, H{}, I{}, K{};
  std::array<Complex, 2> L{};

  PhaseSymbol symbol() const;
};

AppendixHCCoeffs hhc_appendix_coeffs(const std::array<double, 2>& alpha,
                                     const std::array<double, 2>& beta,
                                     const std::array<double, 2>& gamma,
                                     const std::array<double, 2>& delta, const AlgebraParams& alg,
                                     const SWParams& sw, const DysonParams& d);

// Choices left open by the printed closed-form spectrum. The defaults are the
// combination that best matches the Fock-basis oracle (see `errata`).
struct SpectrumReading {
  enum class GammaL { plus, minus };                 // unsubscripted l in Gamma
  enum class SqueezeDenominator { printed, with_l_plus };  // "hbar" vs "l_+ hbar"
  enum class DBar { printed, cosh_on_g_plus, index_swap };
  enum class Chi2Factor { printed, sqrt_m_omega_hbar };

  GammaL gamma_l = GammaL::plus;
  SqueezeDenominator squeeze_denominator = SqueezeDenominator::with_l_plus;
  DBar d_bar = DBar::cosh_on_g_plus;
  Chi2Factor chi2_factor = Chi2Factor::sqrt_m_omega_hbar;
  int k_parity = 0;          // sign (-1)^(k+1) in tanh 2r_i
  std::array<int, 2> phi{};  // phi_i = phi[i] * pi, phi[i] in {0, 1}

  // The discrete branch as one integer: bit 0 = k parity, bits 1, 2 = phi_1, phi_2.
  static constexpr int kBranches = 8;
  int branch() const;
  void set_branch(int b);

  std::string describe() const;
  // Every combination of the discrete choices above.
  static std::vector<SpectrumReading> all();
};

struct SpectrumParams {
  std::array<double, 2> f{}, g{};
  double l_plus = 0.0, l_minus = 0.0;
  double upsilon = 0.0, gamma_angle = 0.0;
  std::array<double, 2> tanh_2r{}, r{};
  std::array<Complex, 2> chi{};
  double c_bar = 0.0, d_bar = 0.0, e_bar = 0.0;
  HHQPCoeffs hhqp;
  // Set when w1 == w2 with a deformation present: the angle formulas are 0/0
  // there, so the parameters are the limit w2 -> w1 from above (chi folded
  // into e_bar, angles and squeezes taken at the nearest offset).
  bool degenerate_limit = false;
};

// Throws BranchFailure (with the offending values in the message) when a
// squeeze argument leaves (-1, 1) or a quantity is not finite.
SpectrumParams spectrum_params(const OscillatorParams& osc, const AlgebraParams& alg,
                               const SWParams& sw, const DysonParams& d,
                               const SpectrumReading& reading = {});

double closed_form_energy(const SpectrumParams& sp, int n1, int n2);
double closed_form_energy(const OscillatorParams& osc, const AlgebraParams& alg,
                          const SWParams& sw, const DysonParams& d, int n1, int n2,
                          const SpectrumReading& reading = {});

struct Level {
  int n1 = 0;
  int n2 = 0;
  double energy = 0.0;
};
// The k lowest closed-form levels, ascending (ties ordered by n1 then n2).
std::vector<Level> closed_form_levels(const SpectrumParams& sp, int k);

// Readings of the two commutative-limit spectra.
struct LimitReading {
  bool hbar_on_oscillator = true;  // (n + 1/2) hbar w  vs  (n + 1/2) w
  bool momentum_shift = false;     // adds -m gamma_i^2 / 2 per mode
};
inline constexpr LimitReading kPrintedNHE{true, false};
inline constexpr LimitReading kPrintedHE{false, false};

// Commutative non-Hermitian limit; delta taken as the real parts of osc.delta.
double limit_energy_nh_commutative(const OscillatorParams& osc, int n1, int n2,
                                   const LimitReading& reading = kPrintedNHE);
// Hermitian limit with delta = -i delta_tilde.
double limit_energy_hermitian(const OscillatorParams& osc, const std::array<double, 2>& delta_tilde,
                              int n1, int n2, const LimitReading& reading = kPrintedHE);

std::array<Complex, 2> displacement_params(const OscillatorParams& osc, const AlgebraParams& alg,
                                           const SWParams& sw, const DysonParams& d,
                                           const SpectrumReading& reading = {});
// Commutative non-Hermitian limit:
//   chi_i = delta_i tan(theta_B_i) / sqrt(2 m hbar w_i^3) + i gamma_i sqrt(m / 2 w_i hbar)
std::array<Complex, 2> displacement_nh_commutative(const OscillatorParams& osc,
                                                   const DysonPhases& phases);
// Hermitian limit: chi_i = -delta_tilde_i / sqrt(2 m w_i^3 hbar) + i gamma_i sqrt(m / 2 w_i hbar)
std::array<Complex, 2> displacement_hermitian(const OscillatorParams& osc,
                                              const std::array<double, 2>& delta_tilde);

}  // namespace nhnc
