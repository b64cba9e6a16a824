#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "nhnc/oscillator_params.hpp"
#include "nhnc/phasepoly.hpp"

namespace nhnc {

// Truncated two-mode number basis |n1, n2>, n_i < cutoff, flattened as
// n1 * cutoff + n2. m, omega, hbar fix the ladder scalings
//   Q = sqrt(hbar / 2 m w) (a + a^dag),  P = i sqrt(m w hbar / 2) (a^dag - a).
struct FockConfig {
  int cutoff = 16;
  double m = 1.0;
  std::array<double, 2> omega{1.0, 1.0};
  double hbar = 1.0;

  static FockConfig for_oscillator(const OscillatorParams& osc, int cutoff = 16);
  int dimension() const { return cutoff * cutoff; }
  void validate() const;
};

struct HermitianMatrix {
  Eigen::MatrixXcd data;

  int dimension() const { return static_cast<int>(data.rows()); }
  // max |H - H^dag|
  double hermiticity_defect() const;
};

struct QuadratureMatrices {
  std::array<Eigen::MatrixXcd, 2> Q;
  std::array<Eigen::MatrixXcd, 2> P;
};

QuadratureMatrices quadrature_matrices(const FockConfig& cfg);

// Weyl quantization of a real symbol of total degree <= 2 in (Q1, Q2, P1, P2).
// Same-mode quadratic products are formed in a larger basis and then cropped,
// so each truncated block is exact. Throws UnsupportedSymbol for degree > 2
// and NonHermitianSymbol for coefficients with a non-negligible imaginary part.
HermitianMatrix quantize(const PhaseSymbol& symbol, const FockConfig& cfg);

// k lowest eigenvalues, ascending.
std::vector<double> eigenvalues(const HermitianMatrix& h, int k);

struct ConvergedSpectrum {
  std::vector<double> values;
  int cutoff = 0;
};
inline constexpr int kFirstCutoff = 16;
inline constexpr int kMaxCutoff = 96;

// Doubles the per-mode cutoff from 16 (never beyond max_cutoff <= 96) until
// the k lowest eigenvalues change by less than rtol relative to
// max(|E|, hbar min w). Throws NonConvergence when the cap is reached first.
ConvergedSpectrum converged_spectrum(const PhaseSymbol& symbol, int k, double rtol,
                                     const FockConfig& base, int max_cutoff = kMaxCutoff);

struct GroundStateMoments {
  double energy = 0.0;
  std::array<double, 2> mean_Q{};
  std::array<double, 2> mean_P{};
};
GroundStateMoments ground_state_moments(const PhaseSymbol& symbol, const FockConfig& cfg);

// Exact spectrum of a positive-definite quadratic-plus-linear symbol
//   (1/2) z^T M z + b^T z + c,  z = (Q1, Q2, P1, P2),
// from the symplectic eigenvalues of J M. Independent of any truncation.
struct NormalModeSpectrum {
  std::array<double, 2> frequencies{};  // ascending
  double ground_energy = 0.0;
  std::array<double, 4> minimum{};  // classical equilibrium -M^{-1} b
  double hbar = 1.0;

  // k lowest levels E0 + n1 hbar w_1 + n2 hbar w_2, ascending.
  std::vector<double> levels(int k) const;
};
NormalModeSpectrum normal_mode_spectrum(const PhaseSymbol& symbol, double hbar);

}  // namespace nhnc
