#pragma once

#include <string>
#include <vector>

#include "nhnc/dyson.hpp"
#include "nhnc/oscillator.hpp"
#include "nhnc/swmap.hpp"

namespace nhnc {

// One parameter point of the two-mode example. The Dyson map is built from
// the phases through the Hermiticity constraints.
struct SpectrumPoint {
  OscillatorParams osc;
  double theta = 0.0;
  double zeta = 0.0;
  double mu = 1.0;
  DysonPhases phases;

  AlgebraParams algebra() const { return AlgebraParams(osc.hbar, theta, zeta); }
  SWParams sw() const { return SWParams::from_mu(algebra(), mu); }
  DysonParams dyson() const { return hermiticity_constraints(osc, algebra(), phases); }
  PhaseSymbol h_hc() const { return real_part(build_h_hc(osc, algebra(), sw(), dyson())); }
  std::string describe() const;
};

struct OracleLevels {
  std::vector<double> fock;   // converged truncated-basis levels
  int cutoff = 0;
  std::vector<double> exact;  // symplectic normal-mode levels
};
// Throws NonConvergence from the Fock oracle.
OracleLevels oracle_levels(const SpectrumPoint& point, int k, double rtol);

struct BranchFit {
  int branch = -1;
  double max_rel_err = 0.0;  // infinity when every branch fails
  std::vector<Level> levels;
  std::string failure;
};
// Evaluates `family` (its branch bits are ignored) on every branch and keeps
// the one with the smallest worst relative level error against `reference`.
BranchFit fit_branch(const SpectrumPoint& point, const SpectrumReading& family,
                     const std::vector<double>& reference);

struct ReadingScore {
  SpectrumReading family;
  double worst = 0.0;
  std::vector<BranchFit> per_point;
};
// Every reading family scored over the points, best (smallest worst case) first.
std::vector<ReadingScore> score_readings(const std::vector<SpectrumPoint>& points,
                                         const std::vector<std::vector<double>>& references);

// Full text report: reading selection with residual table, commutative-limit
// readings, Dyson sum-vs-product, general-prefactor coefficient check.
std::string errata_report(const std::vector<SpectrumPoint>& points, int k, double rtol);

}  // namespace nhnc
