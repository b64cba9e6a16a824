#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "nhnc/errata.hpp"
#include "nhnc/errors.hpp"
#include "nhnc/fock.hpp"
#include "nhnc/hamparse.hpp"
#include "nhnc/oscillator.hpp"
#include "nhnc/suites.hpp"
#include "nhnc/wigner.hpp"

namespace nhnc::cli {

namespace {

constexpr double kCrosscheckTolerance = 1e-10;
constexpr std::uint64_t kSuiteSeed = 0x5eed'a16e'b7a0ULL;

const VariableOrder kOrder(2);

std::string fmt(double x) { return format_double(x); }

// CSV field: quoted only when it has to be.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

std::map<std::string, Complex> bindings(const RunConfig& cfg) {
  const auto& o = cfg.osc;
  return {{"m", o.m},           {"w1", o.omega[0]}, {"w2", o.omega[1]}, {"g1", o.gamma[0]},
          {"g2", o.gamma[1]},   {"d1", o.delta[0]}, {"d2", o.delta[1]}, {"hbar", o.hbar},
          {"theta", cfg.theta}, {"zeta", cfg.zeta}, {"mu", cfg.mu},     {"nu", cfg.sw().nu()}};
}

std::vector<Level> labelled_normal_modes(const NormalModeSpectrum& nm, int k) {
  std::vector<Level> out;
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      out.push_back({a, b, nm.ground_energy + nm.hbar * (a * nm.frequencies[0] + b * nm.frequencies[1])});
  std::stable_sort(out.begin(), out.end(), [](const Level& x, const Level& y) { return x.energy < y.energy; });
  out.resize(static_cast<std::size_t>(k));
  return out;
}

double worst_rel(const std::vector<Level>& a, const std::vector<Level>& b) {
  double w = 0.0;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i)
    w = std::max(w, std::abs(a[i].energy - b[i].energy) / std::max(1.0, std::abs(b[i].energy)));
  return w;
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const NonConvergence*>(&e)) return kNonConvergence;
  return kValidation;
}

Stages pipeline(const RunConfig& cfg) {
  const auto alg = cfg.algebra();
  const auto sw = cfg.sw();
  const auto d = cfg.dyson();
  Stages s;
  if (cfg.hamiltonian) {
    ParseOptions opts;
    opts.known_parameters = standard_parameters();
    s.nhnc = lower(parse(*cfg.hamiltonian, opts), bindings(cfg));
  } else {
    s.nhnc = build_h_nhnc(cfg.osc);
  }
  s.hnc = conjugate_hamiltonian(s.nhnc, d, alg);
  s.hc = substitute(s.hnc, forward_map(sw));
  return s;
}

Method parse_method(const std::string& s) {
  if (s == "closed") return Method::closed;
  if (s == "oracle") return Method::oracle;
  if (s == "both") return Method::both;
  throw InvalidParameter("unknown method '" + s + "' (closed, oracle, both)");
}

PointSpectrum compute_spectrum(const RunConfig& cfg, int levels, Method method) {
  if (levels < 1) throw InvalidParameter("--levels must be >= 1");
  PointSpectrum ps;
  ps.rows.resize(static_cast<std::size_t>(levels));
  auto fail_all = [&](const std::exception& e, bool closed_side) {
    for (auto& r : ps.rows) {
      if (!r.error.empty()) r.error += "; ";
      r.error += std::string(closed_side ? "closed: " : "oracle: ") + e.what();
    }
    ps.exit_code = std::max(ps.exit_code, exit_code_for(e));
  };

  Stages st;
  try {
    cfg.validate();
    st = pipeline(cfg);
  } catch (const Error& e) {
    fail_all(e, false);
    return ps;
  }

  // Exact normal modes: labels for oracle-only output and the branch choice.
  std::vector<Level> exact;
  try {
    if (max_abs_imag(st.hc) > 1e-10 * std::max(1.0, max_abs_coeff(st.hc)))
      throw NonHermitianSymbol("commutative Hermitian symbol keeps complex coefficients");
    exact = labelled_normal_modes(normal_mode_spectrum(real_part(st.hc), cfg.osc.hbar), levels);
  } catch (const Error&) {
    exact.clear();
  }

  if (method != Method::closed) {
    try {
      const auto conv = converged_spectrum(st.hc, levels, cfg.rtol, FockConfig::for_oscillator(cfg.osc),
                                           cfg.cutoff);
      for (int i = 0; i < levels; ++i) {
        ps.rows[i].oracle = conv.values[i];
        ps.rows[i].has_oracle = true;
      }
    } catch (const Error& e) {
      fail_all(e, false);
    }
  }

  std::vector<Level> closed;
  if (method != Method::oracle) {
    try {
      if (cfg.hamiltonian)
        throw InvalidParameter("closed form covers the built-in Hamiltonian only");
      const auto alg = cfg.algebra();
      const auto sw = cfg.sw();
      const auto d = cfg.dyson();
      SpectrumReading reading;
      if (cfg.branch >= 0) {
        reading.set_branch(cfg.branch);
        closed = closed_form_levels(spectrum_params(cfg.osc, alg, sw, d, reading), levels);
      } else {
        double best = std::numeric_limits<double>::infinity();
        std::string last_failure;
        for (int b = 0; b < SpectrumReading::kBranches; ++b) {
          reading.set_branch(b);
          try {
            auto lv = closed_form_levels(spectrum_params(cfg.osc, alg, sw, d, reading), levels);
            const double err = exact.empty() ? 0.0 : worst_rel(lv, exact);
            if (err < best) {
              best = err;
              closed = std::move(lv);
            }
            if (exact.empty()) break;  // nothing to rank against: first valid branch
          } catch (const BranchFailure& e) {
            last_failure = e.what();
          }
        }
        if (closed.empty()) throw BranchFailure(last_failure);
      }
      for (int i = 0; i < levels; ++i) {
        ps.rows[i].closed = closed[i].energy;
        ps.rows[i].has_closed = true;
      }
    } catch (const Error& e) {
      fail_all(e, true);
    }
  }

  const auto& labels = !closed.empty() ? closed : exact;
  for (std::size_t i = 0; i < labels.size() && i < ps.rows.size(); ++i) {
    ps.rows[i].n1 = labels[i].n1;
    ps.rows[i].n2 = labels[i].n2;
  }
  return ps;
}

namespace {

void write_level_fields(std::ostream& out, const SpectrumRow& r) {
  if (r.n1 >= 0) out << r.n1 << ',' << r.n2;
  else out << ',';
  out << ',' << (r.has_closed ? fmt(r.closed) : "") << ',' << (r.has_oracle ? fmt(r.oracle) : "") << ','
      << (r.has_closed && r.has_oracle ? fmt(std::abs(r.closed - r.oracle)) : "");
}

}  // namespace

int cmd_check_algebra(const RunConfig& cfg, std::ostream& out) {
  Rng rng(kSuiteSeed);
  const auto results = algebra_property_suite(cfg.algebra(), cfg.mu, rng);
  bool ok = true;
  for (const auto& r : results) {
    ok = ok && r.passed;
    out << (r.passed ? "PASS " : "FAIL ") << r.name << ": worst " << fmt(r.worst) << " (tol "
        << fmt(r.tolerance) << ")";
    if (!r.detail.empty()) out << " [" << r.detail << "]";
    out << '\n';
  }
  out << (ok ? "all checks passed\n" : "property suite FAILED\n");
  return ok ? kOk : kPropertyFailure;
}

int cmd_transform(const RunConfig& cfg, const std::string& stage, bool show_map, bool crosscheck,
                  std::ostream& out) {
  if (stage != "nhnc" && stage != "hnc" && stage != "hc")
    throw InvalidParameter("unknown stage '" + stage + "' (nhnc, hnc, hc)");
  const auto st = pipeline(cfg);
  const PhaseSymbol& sym = stage == "nhnc" ? st.nhnc : stage == "hnc" ? st.hnc : st.hc;
  out << render(sym, stage == "hc");
  if (show_map) {
    const auto sw = cfg.sw();
    out << "# forward map (q1,q2,p1,p2) in terms of (Q1,Q2,P1,P2)\n" << render_csv(forward_map(sw));
    out << "# inverse map\n" << render_csv(inverse_map(sw));
  }
  if (!crosscheck) return kOk;

  const auto alg = cfg.algebra();
  const auto d = cfg.dyson();
  const PhaseSymbol hand = stage == "nhnc" ? build_h_nhnc(cfg.osc)
                           : stage == "hnc" ? build_hhnc_hand(cfg.osc, alg, d)
                                            : build_h_hc_hand(cfg.osc, alg, cfg.sw(), d);
  const double diff = max_coeff_diff(sym, hand);
  const bool ok = diff < kCrosscheckTolerance;
  out << "# crosscheck against hand-coded " << stage << ": max |diff| " << fmt(diff) << " (tol "
      << fmt(kCrosscheckTolerance) << ") " << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kOk : kPropertyFailure;
}

int cmd_spectrum(const RunConfig& cfg, int levels, Method method, std::ostream& out, std::ostream& err) {
  const auto ps = compute_spectrum(cfg, levels, method);
  out << "n1,n2,closed_form,oracle,abs_diff\n";
  for (std::size_t i = 0; i < ps.rows.size(); ++i) {
    write_level_fields(out, ps.rows[i]);
    out << '\n';
    if (!ps.rows[i].error.empty()) err << "row " << i << ": " << ps.rows[i].error << '\n';
  }
  return ps.exit_code;
}

int cmd_sweep(const RunConfig& cfg, int levels, Method method, int jobs, std::ostream& out) {
  const auto points = cfg.grid();
  std::vector<PointSpectrum> results(points.size());
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers =
      std::min<std::size_t>(points.size(), jobs > 0 ? static_cast<std::size_t>(jobs) : hw);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        results[i] = compute_spectrum(points[i], levels, method);
      } catch (const std::exception& e) {
        PointSpectrum ps;
        ps.rows.resize(1);
        ps.rows[0].error = e.what();
        results[i] = std::move(ps);
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  out << "point";
  for (const auto& ax : cfg.sweep) out << ',' << ax.name;
  out << ",n1,n2,closed_form,oracle,abs_diff,error\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto rows = results[i].rows;
    std::stable_sort(rows.begin(), rows.end(), [](const SpectrumRow& a, const SpectrumRow& b) {
      return std::pair(a.n1, a.n2) < std::pair(b.n1, b.n2);
    });
    // the axis values come from the unexpanded config
    std::vector<double> coords;
    std::size_t stride = points.size();
    std::size_t rem = i;
    for (const auto& ax : cfg.sweep) {
      stride /= static_cast<std::size_t>(ax.steps);
      coords.push_back(ax.at(static_cast<int>(rem / stride)));
      rem %= stride;
    }
    for (const auto& r : rows) {
      out << i;
      for (double c : coords) out << ',' << fmt(c);
      out << ',';
      write_level_fields(out, r);
      out << ',' << csv_field(r.error) << '\n';
    }
  }
  return kOk;
}

int cmd_wigner(const RunConfig& cfg, int mode, const std::string& state, int count, std::ostream& out) {
  if (mode != 1 && mode != 2) throw InvalidParameter("--mode must be 1 or 2");
  int n = 0;
  if (state != "ground") {
    std::size_t used = 0;
    try {
      n = std::stoi(state, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != state.size() || n < 0) throw InvalidParameter("--state must be 'ground' or a level n >= 0");
  }
  const int i = mode - 1;
  const auto hc = pipeline(cfg).hc;
  if (max_abs_imag(hc) > 1e-10 * std::max(1.0, max_abs_coeff(hc)))
    throw NonHermitianSymbol("commutative Hermitian symbol keeps complex coefficients");

  // Single-mode eigenstates exist only when nothing couples the modes.
  const int q = kOrder.position(i), p = kOrder.momentum(i);
  double a = 0.0, b = 0.0, xi = 0.0, lam = 0.0;
  for (const auto& [e, c] : hc.terms()) {
    if (std::abs(c) == 0.0) continue;
    bool own = false, other = false;
    for (int v = 0; v < 4; ++v) {
      if (e[v] == 0) continue;
      (v == q || v == p ? own : other) = true;
    }
    if (own && other) {
      std::string term = render(PhaseSymbol::monomial(kOrder, e, c), true);
      while (!term.empty() && term.back() == '\n') term.pop_back();
      throw SliceError("non-product regime: '" + term + "' couples the modes; no single-mode section exists");
    }
    if (!own) continue;
    if (e[q] == 1 && e[p] == 1) throw DomainError("same-mode Q P term (squeezed eigenstates) not supported");
    if (e[p] == 2) a = c.real();
    else if (e[q] == 2) b = c.real();
    else if (e[p] == 1) xi = c.real();
    else if (e[q] == 1) lam = c.real();
  }
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("mode " + std::to_string(mode) + " is not a bound oscillator");
  const double m_eff = 0.5 / a, w_eff = 2.0 * std::sqrt(a * b);
  const double hbar = cfg.osc.hbar;
  const auto st = FockStateVector::number(n);
  PhaseGrid g = auto_grid(st, m_eff, w_eff, hbar, i, count);
  g = wigner_of_state(st, m_eff, w_eff, hbar, g);
  out << to_csv(translate(std::move(g), -lam / (2.0 * b), -xi / (2.0 * a)));
  return kOk;
}

int cmd_errata(const RunConfig& cfg, int levels, std::ostream& out) {
  std::vector<SpectrumPoint> points;
  for (const auto& c : cfg.grid()) points.push_back(c.point());
  out << errata_report(points, levels, cfg.rtol);
  return kOk;
}

}  // namespace nhnc::cli
