#pragma once

#include <array>

#include "nhnc/oscillator_params.hpp"
#include "nhnc/phasepoly.hpp"
#include "nhnc/star.hpp"

namespace nhnc {

// Phase angles (radians) of the Dyson coefficients A_i, B_i.
struct DysonPhases {
  std::array<double, 2> A{0.0, 0.0};
  std::array<double, 2> B{0.0, 0.0};
};

// Dyson map eta = exp(A_1 q_1 + A_2 q_2 + B_1 p_1 + B_2 p_2), the star product
// of the two per-mode exponentials; coefficients kept in polar form.
struct DysonParams {
  std::array<double, 2> magnitude_A{0.0, 0.0};
  std::array<double, 2> phase_A{0.0, 0.0};
  std::array<double, 2> magnitude_B{0.0, 0.0};
  std::array<double, 2> phase_B{0.0, 0.0};

  static DysonParams zero() { return {}; }
  static DysonParams from_complex(Complex A1, Complex A2, Complex B1, Complex B2);

  Complex A(int i) const { return std::polar(magnitude_A[i], phase_A[i]); }
  Complex B(int i) const { return std::polar(magnitude_B[i], phase_B[i]); }
  DysonPhases phases() const { return {phase_A, phase_B}; }
  // (A_1, A_2, B_1, B_2) in variable order.
  std::vector<Complex> linear_form() const;
};

// Real-valued p_i / q_i coefficients and constants of the Hermitian
// noncommutative Hamiltonian.
struct HermitianNCCoeffs {
  std::array<double, 2> V{};
  std::array<double, 2> T{};
  std::array<double, 2> constant{};
};

// Dyson parameters whose real parts make the conjugated Hamiltonian real; the
// imaginary parts follow from the given phases. Negative magnitudes are
// absorbed as a phase shift of pi, which leaves tan(phase) unchanged.
DysonParams hermiticity_constraints(const OscillatorParams& osc, const AlgebraParams& alg,
                                    const DysonPhases& phases);
// Same for the general kinetic/potential prefactors alpha_i p_i^2 + beta_i q_i^2.
DysonParams hermiticity_constraints(const std::array<double, 2>& alpha,
                                    const std::array<double, 2>& beta,
                                    const std::array<Complex, 2>& delta, const AlgebraParams& alg,
                                    const DysonPhases& phases);

ExpLinear dyson_weyl(const DysonParams& d);
ExpLinear inverse_dyson_weyl(const DysonParams& d);
// Theta^W = (eta^dagger)^W * eta^W.
ExpLinear metric_weyl(const DysonParams& d, const AlgebraParams& alg);

// eta^W * h * (eta^-1)^W.
PhaseSymbol conjugate_hamiltonian(const PhaseSymbol& h_nh, const DysonParams& d,
                                  const AlgebraParams& alg);

// V_i, T_i and the constants from the closed-form coefficient displays.
HermitianNCCoeffs hermitian_nc_coeffs(const OscillatorParams& osc, const AlgebraParams& alg,
                                      const DysonPhases& phases);
// sum_i p_i^2/2m + m w_i^2 q_i^2/2 + p_i V_i + q_i T_i + const_i.
PhaseSymbol build_hhnc_hand(const OscillatorParams& osc, const AlgebraParams& alg,
                             const DysonParams& d);
// General alpha_i, beta_i Hermitian form written in terms of tan(phase).
PhaseSymbol build_hhnc_appendix(const std::array<double, 2>& alpha,
                                const std::array<double, 2>& beta,
                                const std::array<double, 2>& gamma,
                                const std::array<Complex, 2>& delta, const AlgebraParams& alg,
                                const DysonParams& d);

}  // namespace nhnc
