#pragma once

#include <exception>
#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"

namespace nhnc::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kPropertyFailure = 2, kNonConvergence = 3 };

// NonConvergence -> 3, everything else -> 1.
int exit_code_for(const std::exception& e);

// The three pipeline stages. With `hamiltonian` set the first stage is the
// parsed text lowered against the config values; otherwise the built-in model.
struct Stages {
  PhaseSymbol nhnc, hnc, hc;
};
Stages pipeline(const RunConfig& cfg);

enum class Method { closed, oracle, both };
Method parse_method(const std::string& s);

struct SpectrumRow {
  int n1 = -1, n2 = -1;  // -1 when no labelling is available
  double closed = 0.0, oracle = 0.0;
  bool has_closed = false, has_oracle = false;
  std::string error;
};
struct PointSpectrum {
  std::vector<SpectrumRow> rows;  // ascending energy
  int exit_code = kOk;
};
// Never throws for numerical failures; they land in SpectrumRow::error.
PointSpectrum compute_spectrum(const RunConfig& cfg, int levels, Method method);

int cmd_check_algebra(const RunConfig& cfg, std::ostream& out);
int cmd_transform(const RunConfig& cfg, const std::string& stage, bool show_map, bool crosscheck,
                  std::ostream& out);
int cmd_spectrum(const RunConfig& cfg, int levels, Method method, std::ostream& out, std::ostream& err);
// jobs = 0 picks the hardware concurrency. Output does not depend on jobs.
int cmd_sweep(const RunConfig& cfg, int levels, Method method, int jobs, std::ostream& out);
int cmd_wigner(const RunConfig& cfg, int mode, const std::string& state, int count, std::ostream& out);
int cmd_errata(const RunConfig& cfg, int levels, std::ostream& out);

}  // namespace nhnc::cli
