#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nhnc/phasepoly.hpp"
#include "nhnc/star.hpp"
#include "nhnc/swmap.hpp"

namespace nhnc {

struct GridAxis {
  double min = -1.0;
  double max = 1.0;
  int count = 129;

  double step() const { return (max - min) / (count - 1); }
  double at(int i) const { return min + i * step(); }
};

// Wigner values on a single-mode section (Q_i, P_i), row-major with Q as
// the slow index: values[iq * p.count + ip].
struct PhaseGrid {
  int mode = 0;
  GridAxis q;
  GridAxis p;
  std::vector<double> values;

  double at(int iq, int ip) const { return values[static_cast<std::size_t>(iq) * p.count + ip]; }
  double cell_measure() const { return q.step() * p.step(); }
  // Throws DomainError unless both counts are >= 32 and every value is finite.
  void validate() const;
};

inline constexpr int kMinGridCount = 32;

// Single-mode state in the number basis; construction checks the norm.
class FockStateVector {
 public:
  explicit FockStateVector(std::vector<Complex> coeffs);
  static FockStateVector number(int n);
  static FockStateVector normalized(std::vector<Complex> coeffs);

  const std::vector<Complex>& coeffs() const { return coeffs_; }
  int max_level() const { return static_cast<int>(coeffs_.size()) - 1; }

 private:
  std::vector<Complex> coeffs_;
};

// sum_n c_n phi_n(x) with normalized Hermite functions. A complex argument
// gives the analytic continuation (used for psi = eta^-1 phi).
Complex position_wavefunction(const FockStateVector& state, double m, double omega, double hbar,
                              Complex x);
double position_density(const FockStateVector& state, double m, double omega, double hbar,
                        double x);

using Wavefunction = std::function<Complex(double)>;

// W(Q, P) = (1/2 pi hbar) int dy exp(-i P y / hbar) psi(Q + y/2) psi*(Q - y/2)
// by the trapezoid rule in y on [-y_span, y_span] with y_count points. The
// grid's values are overwritten; psi need not be normalized.
void wigner_of_wavefunction(const Wavefunction& psi, double hbar, PhaseGrid& grid,
                            double y_span, int y_count);

// Grid spanning n_sigma standard deviations of the highest occupied level.
PhaseGrid auto_grid(const FockStateVector& state, double m, double omega, double hbar,
                    int mode = 0, int count = 129, double n_sigma = 8.0);

// Wigner function of a number-basis state on the given grid. Throws
// DomainError when the integrated mass misses 1 by more than 1e-6
// (grid too narrow for the state).
PhaseGrid wigner_of_state(const FockStateVector& state, double m, double omega, double hbar,
                          const PhaseGrid& grid);
PhaseGrid wigner_of_state(const FockStateVector& state, double m, double omega, double hbar,
                          int mode = 0);

// Trapezoid integral of W over the grid.
// W(q - q0, p - p0): a displaced state's Wigner function is the translate,
// so only the axes move.
PhaseGrid translate(PhaseGrid grid, double q0, double p0);

double grid_mass(const PhaseGrid& grid);
// int int W O^W by the trapezoid rule. O must depend only on the grid's
// mode (SliceError otherwise); the real part of O is used.
double expectation(const PhaseGrid& grid, const PhaseSymbol& observable);
// Marginal int W dP at every Q node.
std::vector<double> position_marginal(const PhaseGrid& grid);

// Pushes W(Q, P) forward to W(q, p) along the Seiberg-Witten map. Only maps
// that keep the section closed (no cross-mode entries) are accepted; the
// section map is then diagonal and the resampling exact.
PhaseGrid pushforward(const PhaseGrid& grid, const SWParams& sw);

// int int W_psi (Theta^W * O^W) with Theta^W an exponential of a linear form.
// Throws SliceError when Theta or O involve the other mode and DomainError
// when the integrand does not decay at the grid boundary.
double metric_weighted_expectation(const PhaseGrid& grid_nh, const ExpLinear& metric,
                                   const PhaseSymbol& observable, const AlgebraParams& alg);

// Derivatives of the single-mode ground-state Wigner function
//   (1/pi hbar) exp(-m w Q^2/hbar - P^2/(m w hbar))
// at (q, p) of `mode`, as a jet over the four phase-space variables.
DerivativeJet ground_wigner_jet(int mode, double m, double omega, double hbar, double q, double p);
// max over the grid of |(H * W)(z) - E W(z)| for the ground-state Gaussian W.
double star_value_residual(const PhaseSymbol& h, double energy, const PhaseGrid& grid, double m,
                           double omega, const AlgebraParams& alg);

// Axis metadata and normalization stamp, then `Q,P,W` rows.
std::string to_csv(const PhaseGrid& grid);

}  // namespace nhnc
