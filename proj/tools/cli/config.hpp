#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nhnc/dyson.hpp"
#include "nhnc/errata.hpp"
#include "nhnc/oscillator_params.hpp"
#include "nhnc/phasepoly.hpp"
#include "nhnc/swmap.hpp"

namespace nhnc::cli {

struct SweepAxis {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  int steps = 1;

  double at(int j) const;
};

// Flat `key = value` file. Numeric values are constant expressions in the
// Hamiltonian grammar (so `d1 = 0.3i` and `w2 = 3/2` work). `#` starts a comment.
struct RunConfig {
  OscillatorParams osc;
  double theta = 0.0;
  double zeta = 0.0;
  double mu = 1.0;
  std::optional<double> nu;
  DysonPhases phases;
  int cutoff = 64;    // largest per-mode Fock cutoff the oracle may use
  double rtol = 1e-8;
  int branch = -1;    // closed-form branch 0..7, -1 = pick by exact normal modes
  std::vector<SweepAxis> sweep;
  std::optional<std::string> hamiltonian;

  AlgebraParams algebra() const;
  SWParams sw() const;
  DysonParams dyson() const;
  SpectrumPoint point() const;

  // Throws InvalidParameter / InvalidAlgebra / DegenerateAlgebra.
  void validate() const;

  // Sets a sweepable scalar; unknown names throw InvalidParameter.
  void set(const std::string& name, double value);

  // Cartesian product of the sweep axes, last axis fastest. No axes -> {*this}.
  std::vector<RunConfig> grid() const;
};

bool is_sweepable(const std::string& name);

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

}  // namespace nhnc::cli
