#include "config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "nhnc/errors.hpp"
#include "nhnc/fock.hpp"
#include "nhnc/hamparse.hpp"

namespace nhnc::cli {

double SweepAxis::at(int j) const {
  if (steps <= 1) return min;
  return min + (max - min) * static_cast<double>(j) / static_cast<double>(steps - 1);
}

AlgebraParams RunConfig::algebra() const { return AlgebraParams(osc.hbar, theta, zeta); }

SWParams RunConfig::sw() const {
  const auto alg = algebra();
  return nu ? SWParams(mu, *nu, alg) : SWParams::from_mu(alg, mu);
}

DysonParams RunConfig::dyson() const { return hermiticity_constraints(osc, algebra(), phases); }

SpectrumPoint RunConfig::point() const {
  SpectrumPoint p;
  p.osc = osc;
  p.theta = theta;
  p.zeta = zeta;
  p.mu = mu;
  p.phases = phases;
  return p;
}

void RunConfig::validate() const {
  osc.validate();
  (void)sw();  // algebra + SW constraint
  if (cutoff <= kFirstCutoff || cutoff > kMaxCutoff)
    throw InvalidParameter("cutoff must lie in (" + std::to_string(kFirstCutoff) + ", " +
                           std::to_string(kMaxCutoff) + "], got " + std::to_string(cutoff));
  if (!(rtol > 0.0) || !std::isfinite(rtol)) throw InvalidParameter("rtol must be positive");
  if (branch < -1 || branch >= SpectrumReading::kBranches)
    throw InvalidParameter("branch must be -1 (auto) or 0.." +
                           std::to_string(SpectrumReading::kBranches - 1));
  for (const auto& ax : sweep) {
    if (!is_sweepable(ax.name)) throw InvalidParameter("sweep over unknown parameter '" + ax.name + "'");
    if (ax.steps < 1) throw InvalidParameter("sweep '" + ax.name + "' needs steps >= 1");
  }
}

namespace {

double* scalar_slot(RunConfig& c, const std::string& name) {
  if (name == "m") return &c.osc.m;
  if (name == "w1") return &c.osc.omega[0];
  if (name == "w2") return &c.osc.omega[1];
  if (name == "g1") return &c.osc.gamma[0];
  if (name == "g2") return &c.osc.gamma[1];
  if (name == "hbar") return &c.osc.hbar;
  if (name == "theta") return &c.theta;
  if (name == "zeta") return &c.zeta;
  if (name == "mu") return &c.mu;
  if (name == "thA1") return &c.phases.A[0];
  if (name == "thA2") return &c.phases.A[1];
  if (name == "thB1") return &c.phases.B[0];
  if (name == "thB2") return &c.phases.B[1];
  return nullptr;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw InvalidParameter("config line " + std::to_string(line) + ": " + msg);
}

Complex constant_value(const std::string& text, int line) {
  try {
    ParseOptions opts;
    opts.known_parameters = std::set<std::string>{};
    return evaluate_constant(parse(text, opts));
  } catch (const ParseError& e) {
    fail(line, std::string("bad value '") + text + "': " + e.what());
  }
}

double real_value(const std::string& text, int line) {
  const Complex v = constant_value(text, line);
  if (v.imag() != 0.0) fail(line, "value '" + text + "' must be real");
  return v.real();
}

int int_value(const std::string& text, int line) {
  int out = 0;
  const char* b = text.data();
  const char* e = b + text.size();
  auto [ptr, ec] = std::from_chars(b, e, out);
  if (ec != std::errc{} || ptr != e) fail(line, "expected an integer, got '" + text + "'");
  return out;
}

SweepAxis sweep_value(const std::string& text, int line) {
  std::string t = text;
  for (char& ch : t)
    if (ch == ':') ch = ' ';
  std::istringstream is(t);
  std::vector<std::string> parts;
  for (std::string w; is >> w;) parts.push_back(w);
  if (parts.size() != 4) fail(line, "sweep expects 'name:min:max:steps'");
  SweepAxis ax;
  ax.name = parts[0];
  if (!is_sweepable(ax.name)) fail(line, "cannot sweep '" + ax.name + "'");
  ax.min = real_value(parts[1], line);
  ax.max = real_value(parts[2], line);
  ax.steps = int_value(parts[3], line);
  if (ax.steps < 1) fail(line, "sweep steps must be >= 1");
  return ax;
}

}  // namespace

bool is_sweepable(const std::string& name) {
  RunConfig probe;
  return scalar_slot(probe, name) != nullptr || name == "d1" || name == "d2" || name == "nu";
}

void RunConfig::set(const std::string& name, double value) {
  if (double* slot = scalar_slot(*this, name)) {
    *slot = value;
  } else if (name == "d1" || name == "d2") {
    // sweeps move the real part; the imaginary part stays as configured
    auto& d = osc.delta[name == "d1" ? 0 : 1];
    d = Complex{value, d.imag()};
  } else if (name == "nu") {
    nu = value;
  } else {
    throw InvalidParameter("unknown parameter '" + name + "'");
  }
}

std::vector<RunConfig> RunConfig::grid() const {
  std::vector<RunConfig> out{*this};
  for (const auto& ax : sweep) {
    std::vector<RunConfig> next;
    next.reserve(out.size() * static_cast<std::size_t>(ax.steps));
    for (const auto& c : out) {
      for (int j = 0; j < ax.steps; ++j) {
        RunConfig p = c;
        p.set(ax.name, ax.at(j));
        next.push_back(std::move(p));
      }
    }
    out = std::move(next);
  }
  for (auto& c : out) c.sweep.clear();
  return out;
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::map<std::string, int> seen;
  std::istringstream is(text);
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) fail(line, "expected 'key = value'");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (value.empty()) fail(line, "missing value for '" + key + "'");
    if (key != "sweep") {
      if (auto it = seen.find(key); it != seen.end())
        fail(line, "duplicate key '" + key + "' (first on line " + std::to_string(it->second) + ")");
      seen[key] = line;
    }

    if (double* slot = scalar_slot(cfg, key)) {
      *slot = real_value(value, line);
    } else if (key == "d1" || key == "d2") {
      cfg.osc.delta[key == "d1" ? 0 : 1] = constant_value(value, line);
    } else if (key == "nu") {
      cfg.nu = real_value(value, line);
    } else if (key == "cutoff") {
      cfg.cutoff = int_value(value, line);
    } else if (key == "branch") {
      cfg.branch = int_value(value, line);
    } else if (key == "rtol") {
      cfg.rtol = real_value(value, line);
    } else if (key == "sweep") {
      cfg.sweep.push_back(sweep_value(value, line));
    } else if (key == "hamiltonian") {
      cfg.hamiltonian = value;
    } else {
      fail(line, "unknown key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidParameter("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace nhnc::cli
