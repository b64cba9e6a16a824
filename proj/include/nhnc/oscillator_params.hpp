#pragma once

#include <array>
#include <complex>

namespace nhnc {

// Two-mode linearly amplified oscillator
//   sum_i p_i^2/2m + m w_i^2 q_i^2/2 + gamma_i p_i + i delta_i q_i.
// delta is real in the PT-symmetric case; a purely imaginary delta makes the
// Hamiltonian Hermitian.
struct OscillatorParams {
  double m = 1.0;
  std::array<double, 2> omega{1.0, 1.0};
  std::array<double, 2> gamma{0.0, 0.0};
  std::array<std::complex<double>, 2> delta{0.0, 0.0};
  double hbar = 1.0;

  // Throws InvalidParameter unless m, omega_i, hbar > 0 and all entries finite.
  void validate() const;
  // Kinetic and potential prefactors alpha_i = 1/2m, beta_i = m w_i^2 / 2.
  double alpha(int /*i*/) const { return 0.5 / m; }
  double beta(int i) const { return 0.5 * m * omega[i] * omega[i]; }
};

}  // namespace nhnc
