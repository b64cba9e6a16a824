// Acceptance run: one PASS/FAIL line per criterion, tolerances pinned below.
// Exit status is 0 when every criterion passes, or, with --expect-fail, when
// exactly the listed criteria fail.
#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nhnc/dyson.hpp"
#include "nhnc/errata.hpp"
#include "nhnc/errors.hpp"
#include "nhnc/fock.hpp"
#include "nhnc/hamparse.hpp"
#include "nhnc/oscillator.hpp"
#include "nhnc/suites.hpp"
#include "nhnc/wigner.hpp"

using namespace nhnc;

namespace {

bool verbose = false;

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

// worst <= tol with the numbers shown
std::string measure(const char* what, double worst, double tol) {
  return std::string(what) + "=" + sci(worst) + " (tol " + sci(tol) + ")";
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

OscillatorParams osc_of(std::array<double, 2> w, std::array<double, 2> g, std::array<Complex, 2> d, double m = 1.0,
                        double hbar = 1.0) {
  OscillatorParams o;
  o.m = m;
  o.hbar = hbar;
  o.omega = w;
  o.gamma = g;
  o.delta = d;
  return o;
}

// ---- 1: star commutators and associativity -------------------------------
Outcome algebra_suite() {
  constexpr double kCommTol = 1e-12, kAssocTol = 1e-10, kBudget = 5.0;
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(1001);
  double comm = 0.0, assoc = 0.0;
  for (int t = 0; t < 50; ++t) {
    const auto alg = random_algebra(rng);
    comm = std::max(comm, commutator_check(alg).worst);
    if (t < 10) assoc = std::max(assoc, associativity_check(alg, rng, 3).worst);
  }
  const double dt = seconds_since(t0);
  return {comm < kCommTol && assoc < kAssocTol && dt < kBudget,
          measure("commutator", comm, kCommTol) + ", " + measure("associativity", assoc, kAssocTol) + ", " +
              sci(dt) + " s"};
}

// ---- 2: Seiberg-Witten map -------------------------------------------------
Outcome sw_suite() {
  constexpr double kConstraintTol = 1e-12, kRoundTol = 1e-10, kInverseTol = 1e-10, kBudget = 1.0;
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(1002);
  double cons = 0.0, round = 0.0, inv = 0.0;
  bool ok = sw_commutative_identity_check(1.0).passed && sw_commutative_identity_check(0.7).passed;
  for (int t = 0; t < 50; ++t) {
    const auto sw = SWParams::from_mu(random_algebra(rng), 0.5 + 0.02 * t);
    cons = std::max(cons, sw_constraint_check(sw).worst);
    round = std::max(round, sw_round_trip_check(sw).worst);
    inv = std::max(inv, sw_inverse_check(sw).worst);
  }
  const double dt = seconds_since(t0);
  ok = ok && cons < kConstraintTol && round < kRoundTol && inv < kInverseTol && dt < kBudget;
  return {ok, measure("constraint", cons, kConstraintTol) + ", " + measure("round trip", round, kRoundTol) + ", " +
                  measure("inverse", inv, kInverseTol) + ", identity limit " + (ok ? "ok" : "checked") + ", " +
                  sci(dt) + " s"};
}

// ---- 3 and 4: Dyson conjugation and the full pipeline -----------------------
struct Draw {
  AlgebraParams alg;
  OscillatorParams osc;
  SWParams sw;
  DysonParams d;
};

std::vector<Draw> draws() {
  Rng rng(1003);
  std::vector<Draw> out;
  for (int t = 0; t < 100; ++t) {
    const auto alg = random_algebra(rng);
    const auto osc = random_oscillator(rng, alg.hbar());
    const auto d = hermiticity_constraints(osc, alg, random_phases(rng));
    out.push_back({alg, osc, SWParams::from_mu(alg, 0.6 + 0.008 * t), d});
  }
  return out;
}

Outcome dyson_suite() {
  constexpr double kTol = 1e-10, kBudget = 10.0;
  const auto t0 = std::chrono::steady_clock::now();
  double imag = 0.0, hand = 0.0, appendix = 0.0;
  for (const auto& x : draws()) {
    const auto h = conjugate_hamiltonian(build_h_nhnc(x.osc), x.d, x.alg);
    imag = std::max(imag, max_abs_imag(h));
    hand = std::max(hand, max_coeff_diff(h, build_hhnc_hand(x.osc, x.alg, x.d)));
    const std::array<double, 2> a{x.osc.alpha(0), x.osc.alpha(1)}, b{x.osc.beta(0), x.osc.beta(1)};
    appendix = std::max(appendix,
                        max_coeff_diff(build_hhnc_appendix(a, b, x.osc.gamma, x.osc.delta, x.alg, x.d), h));
  }
  const double dt = seconds_since(t0);
  return {imag < kTol && hand < kTol && appendix < kTol && dt < kBudget,
          measure("max Im", imag, kTol) + ", " + measure("hand-coded", hand, kTol) + ", " +
              measure("general prefactors", appendix, kTol) + ", " + sci(dt) + " s"};
}

Outcome pipeline_suite() {
  constexpr double kTol = 1e-10;
  double worst = 0.0;
  for (const auto& x : draws())
    worst = std::max(worst, max_coeff_diff(build_h_hc(x.osc, x.alg, x.sw, x.d), build_h_hc_hand(x.osc, x.alg, x.sw, x.d)));
  return {worst < kTol, measure("pipeline vs hand-coded", worst, kTol)};
}

// ---- 5: commutative-limit spectra -------------------------------------------
Outcome limit_suite() {
  constexpr double kRel = 1e-8, kBudgetPerPoint = 30.0;
  constexpr int kCap = 64, kLevels = 4;
  double nhe_printed = 0.0, nhe_shifted = 0.0, he = 0.0, slowest = 0.0;
  bool offset_positive = true;

  auto oracle = [&](const OscillatorParams& o, const DysonParams& d) {
    const AlgebraParams alg(o.hbar, 0.0, 0.0);
    const auto h = real_part(build_h_hc(o, alg, SWParams::from_mu(alg, 1.0), d));
    return converged_spectrum(h, 8, 1e-10, FockConfig::for_oscillator(o), kCap).values;
  };
  // level energy -> worst relative error against the sorted oracle levels
  auto compare = [&](const std::vector<double>& ref, const std::function<double(int, int)>& e) {
    std::vector<double> lv;
    for (int n1 = 0; n1 < 4; ++n1)
      for (int n2 = 0; n2 < 4; ++n2) lv.push_back(e(n1, n2));
    std::sort(lv.begin(), lv.end());
    double w = 0.0;
    for (int i = 0; i < kLevels; ++i) w = std::max(w, std::abs(lv[i] - ref[i]) / std::abs(ref[i]));
    return w;
  };

  // non-Hermitian limit: printed form where gamma = 0, momentum-shifted form otherwise
  const std::vector<OscillatorParams> nh{osc_of({1.0, 2.0}, {0.0, 0.0}, {0.3, 0.4}),
                                         osc_of({0.8, 1.3}, {0.0, 0.0}, {-0.2, 0.5}, 1.4, 0.7),
                                         osc_of({1.0, 1.5}, {0.3, -0.2}, {0.3, 0.4}, 1.2),
                                         osc_of({1.1, 0.9}, {0.1, 0.25}, {0.4, -0.1}, 0.9, 1.6)};
  for (const auto& o : nh) {
    const auto t0 = std::chrono::steady_clock::now();
    const AlgebraParams alg(o.hbar, 0.0, 0.0);
    const auto ref = oracle(o, hermiticity_constraints(o, alg, DysonPhases{{0.2, -0.1}, {0.3, 0.1}}));
    const bool has_gamma = o.gamma[0] != 0.0 || o.gamma[1] != 0.0;
    const double w = compare(ref, [&](int a, int b) {
      return limit_energy_nh_commutative(o, a, b, has_gamma ? LimitReading{true, true} : kPrintedNHE);
    });
    (has_gamma ? nhe_shifted : nhe_printed) = std::max(has_gamma ? nhe_shifted : nhe_printed, w);
    slowest = std::max(slowest, seconds_since(t0));
  }
  // Hermitian limit (delta = -i d~), hbar != 1 singles out the consistent reading
  const std::vector<std::pair<OscillatorParams, std::array<double, 2>>> hp{
      {osc_of({1.0, 1.5}, {0.2, 0.1}, {Complex{0, -0.3}, Complex{0, -0.5}}, 1.0, 2.0), {0.3, 0.5}},
      {osc_of({0.7, 1.2}, {0.0, 0.0}, {Complex{0, -0.4}, Complex{0, 0.2}}, 1.3, 0.6), {0.4, -0.2}}};
  for (const auto& [o, dt] : hp) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto ref = oracle(o, DysonParams::zero());
    he = std::max(he, compare(ref, [&](int a, int b) { return limit_energy_hermitian(o, dt, a, b, {true, true}); }));
    slowest = std::max(slowest, seconds_since(t0));
    // same |delta| in the non-Hermitian model sits higher
    auto onh = o;
    onh.delta = {dt[0], dt[1]};
    onh.gamma = {0.0, 0.0};
    auto oh = o;
    oh.gamma = {0.0, 0.0};
    offset_positive = offset_positive && limit_energy_nh_commutative(onh, 0, 0) >
                                             limit_energy_hermitian(oh, dt, 0, 0, {true, true});
  }
  const bool ok =
      nhe_printed < kRel && nhe_shifted < kRel && he < kRel && offset_positive && slowest < kBudgetPerPoint;
  return {ok, measure("NHE (gamma = 0)", nhe_printed, kRel) + ", " + measure("NHE (gamma shift)", nhe_shifted, kRel) +
                  ", " + measure("HE (hbar-consistent)", he, kRel) + ", NHE - HE > 0: " +
                  (offset_positive ? "yes" : "no") + ", slowest point " + sci(slowest) + " s"};
}

// ---- 6: general noncommutative spectrum -------------------------------------
std::vector<SpectrumPoint> nc_points() {
  struct Row {
    double w2, g1, g2, d1, d2, theta, zeta, a1, b2;
  };
  const Row rows[] = {
      {1.5, 0.2, 0.0, 0.3, 0.0, 0.05, 0.05, 0.3, 0.0},   {1.5, 0.2, 0.0, 0.3, 0.0, 0.2, 0.2, 0.3, 0.0},
      {1.5, 0.2, 0.0, 0.3, 0.0, 0.05, 0.2, 0.3, 0.0},    {1.5, 0.2, 0.0, 0.3, 0.0, 0.2, 0.05, 0.3, 0.0},
      {1.5, 0.0, 0.0, 0.0, 0.0, 0.1, 0.05, 0.0, 0.0},    {2.0, 0.1, -0.1, 0.2, 0.3, 0.1, 0.1, 0.0, 0.2},
      {1.3, -0.2, 0.15, 0.1, -0.2, 0.15, -0.1, 0.2, -0.1}, {1.8, 0.0, 0.3, 0.4, 0.0, -0.2, 0.2, 0.0, 0.0},
      {1.2, 0.25, 0.25, -0.3, 0.1, 0.2, 0.0, 0.1, 0.1},  {2.5, 0.1, 0.0, 0.0, 0.35, 0.0, 0.2, 0.0, 0.3},
      {1.6, -0.1, 0.2, 0.2, 0.2, 0.12, 0.18, -0.2, 0.0}, {0.7, 0.15, -0.05, 0.25, -0.15, 0.08, -0.16, 0.1, 0.2}};
  std::vector<SpectrumPoint> pts;
  for (const auto& r : rows) {
    SpectrumPoint p;
    p.osc = osc_of({1.0, r.w2}, {r.g1, r.g2}, {r.d1, r.d2});
    p.theta = r.theta;
    p.zeta = r.zeta;
    p.phases.A[0] = r.a1;
    p.phases.B[1] = r.b2;
    pts.push_back(p);
  }
  return pts;
}

Outcome nc_suite() {
  constexpr double kRel = 1e-6, kConvergence = 1e-8, kBudget = 300.0;
  constexpr int kLevels = 6, kCap = 64;
  const auto t0 = std::chrono::steady_clock::now();
  const auto pts = nc_points();
  std::vector<std::vector<double>> refs;
  std::vector<int> cutoffs;
  int converged = 0;
  for (const auto& p : pts) {
    try {
      const auto r = converged_spectrum(p.h_hc(), kLevels, kConvergence, FockConfig::for_oscillator(p.osc), kCap);
      refs.push_back(r.values);
      cutoffs.push_back(r.cutoff);
      ++converged;
    } catch (const NonConvergence&) {
      refs.push_back({});
      cutoffs.push_back(-1);
    }
  }
  if (converged != static_cast<int>(pts.size()))
    return {false, std::to_string(converged) + "/" + std::to_string(pts.size()) + " points converged at rtol " +
                       sci(kConvergence)};
  const auto scores = score_readings(pts, refs);
  const auto& best = scores.front();
  const std::string reading = best.family.describe().substr(0, best.family.describe().find(" k="));
  int failing = 0;
  for (const auto& f : best.per_point) failing += f.max_rel_err >= kRel;
  const double dt = seconds_since(t0);
  std::ostringstream os;
  os << pts.size() << " points converged; selected reading [" << reading << "]: "
     << measure("worst relative level error", best.worst, kRel) << ", " << failing << " point(s) over tolerance, "
     << sci(dt) << " s";
  if (best.worst >= kRel) os << "; residual reported by `nhnc-cli errata` as CANDIDATE ERRATUM";
  if (verbose)
    for (std::size_t i = 0; i < pts.size(); ++i)
      os << "\n    " << pts[i].describe() << "  branch " << best.per_point[i].branch << "  rel err "
         << sci(best.per_point[i].max_rel_err) << "  oracle cutoff " << cutoffs[i];
  return {best.worst < kRel && dt < kBudget, os.str()};
}

// ---- 7: Wigner functions ----------------------------------------------------
Outcome wigner_suite() {
  constexpr double kNorm = 1e-6, kEnergy = 1e-6, kChain = 1e-5, kResidual = 1e-6, kBudget = 30.0;
  const auto t0 = std::chrono::steady_clock::now();
  const VariableOrder order(2);
  auto mode_h = [&](int mode, double m, double w) {
    Exponents eq(4, 0), ep(4, 0);
    eq[order.position(mode)] = 2;
    ep[order.momentum(mode)] = 2;
    return PhaseSymbol::monomial(order, ep, 0.5 / m) + PhaseSymbol::monomial(order, eq, 0.5 * m * w * w);
  };
  const auto g0 = FockStateVector::number(0);

  // normalization and <H> against the oracle: commutative model with a gamma shift
  const auto o = osc_of({0.9, 1.6}, {0.2, -0.15}, {0.0, 0.0}, 1.3, 1.1);
  double norm = 0.0, energy = 0.0;
  for (int i = 0; i < 2; ++i) {
    const auto grid = translate(wigner_of_state(g0, o.m, o.omega[i], o.hbar, i), 0.0, -o.m * o.gamma[i]);
    norm = std::max(norm, std::abs(grid_mass(grid) - 1.0));
    energy += expectation(grid, mode_h(i, o.m, o.omega[i]) +
                                    PhaseSymbol::variable(order, order.momentum(i), o.gamma[i]));
  }
  const AlgebraParams calg(o.hbar, 0.0, 0.0);
  const auto h = real_part(build_h_hc(o, calg, SWParams::from_mu(calg, 1.0), DysonParams::zero()));
  const double e0 = converged_spectrum(h, 1, 1e-10, FockConfig::for_oscillator(o), 64).values[0];
  const double energy_err = std::abs(energy - e0);

  // metric chain on the displaced (non-Hermitian) Gaussian: psi = eta^-1 phi
  const double m = 1.0, w = 1.0, hb = 1.0, gamma = 0.2, delta = 0.3;
  const auto on = osc_of({w, 1.0}, {gamma, 0.0}, {delta, 0.0}, m, hb);
  const AlgebraParams alg1(hb, 0.0, 0.0);
  const auto d = hermiticity_constraints(on, alg1, DysonPhases{});
  const auto eta = dyson_weyl(d);
  const Complex a = eta.coeffs[order.position(0)], c = eta.coeffs[order.momentum(0)];
  const Wavefunction psi = [&](double x) {
    const Complex z = Complex{x, 0.0} + Complex{0.0, hb} * c;
    return std::exp(-a * x) * position_wavefunction(g0, m, w, hb, z) * std::exp(Complex{0, -m * gamma / hb} * z);
  };
  PhaseGrid grid = translate(auto_grid(g0, m, w, hb, 0, 161, 10.0), 0.0, -m * gamma);
  grid.values.assign(161 * 161, 0.0);
  wigner_of_wavefunction(psi, hb, grid, 20.0, 1201);
  const auto h_nh = mode_h(0, m, w) + PhaseSymbol::variable(order, order.momentum(0), gamma) +
                    PhaseSymbol::variable(order, order.position(0), Complex{0.0, delta});
  const auto theta = metric_weyl(d, alg1);
  const double chain = metric_weighted_expectation(grid, theta, h_nh, alg1) /
                       metric_weighted_expectation(grid, theta, PhaseSymbol::constant(order, 1.0), alg1);
  const double chain_err = std::abs(chain - (0.5 * hb * w + delta * delta / (2.0 * m * w * w) - 0.5 * m * gamma * gamma));

  // star-value equation for the ground state
  const auto rgrid = auto_grid(g0, 1.2, 0.8, 1.0, 0, 33, 3.0);
  const double residual = star_value_residual(mode_h(0, 1.2, 0.8), 0.4, rgrid, 1.2, 0.8, alg1);

  const double dt = seconds_since(t0);
  return {norm < kNorm && energy_err < kEnergy && chain_err < kChain && residual < kResidual && dt < kBudget,
          measure("normalization", norm, kNorm) + ", " + measure("<H> vs oracle", energy_err, kEnergy) + ", " +
              measure("metric chain", chain_err, kChain) + ", " + measure("star residual", residual, kResidual) +
              ", " + sci(dt) + " s"};
}

// ---- 8: Hamiltonian parser --------------------------------------------------
std::string random_expr(std::mt19937_64& rng, int depth) {
  static const char* atoms[] = {"q1", "q2", "p1", "p2", "m", "w1", "d2", "hbar", "i", "2", "0.5", "3i", "1e-3"};
  const auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
  if (depth == 0) return atoms[pick(13)];
  switch (pick(6)) {
    case 0: return random_expr(rng, depth - 1) + " + " + random_expr(rng, depth - 1);
    case 1: return random_expr(rng, depth - 1) + " - " + random_expr(rng, depth - 1);
    case 2: return random_expr(rng, depth - 1) + "*" + random_expr(rng, depth - 1);
    case 3: return "(" + random_expr(rng, depth - 1) + ")/(2*m)";
    case 4: return "-" + random_expr(rng, depth - 1);
    default: return "(" + random_expr(rng, depth - 1) + ")^" + std::to_string(pick(4));
  }
}

Outcome parser_suite() {
  constexpr double kTol = 1e-12;
  const std::string model =
      "p1^2/(2*m) + 0.5*m*w1^2*q1^2 + g1*p1 + i*d1*q1 + p2^2/(2*m) + 0.5*m*w2^2*q2^2 + g2*p2 + i*d2*q2";
  Rng rng(1008);
  double worst = 0.0;
  ParseOptions strict;
  strict.known_parameters = standard_parameters();
  for (int t = 0; t < 20; ++t) {
    const auto o = random_oscillator(rng, 0.5 + 0.05 * t);
    const std::map<std::string, Complex> env{{"m", o.m},         {"w1", o.omega[0]}, {"w2", o.omega[1]},
                                             {"g1", o.gamma[0]}, {"g2", o.gamma[1]}, {"d1", o.delta[0]},
                                             {"d2", o.delta[1]}};
    worst = std::max(worst, max_coeff_diff(lower(parse(model, strict), env), build_h_nhnc(o)));
  }

  std::mt19937_64 gen(50);
  int round_trip_failures = 0;
  for (int t = 0; t < 50; ++t) {
    const auto text = t == 0 ? model : random_expr(gen, 3);
    const auto a = parse(text);
    const auto r = render(a);
    const auto b = parse(r);
    if (!structurally_equal(a, b) || render(b) != r) ++round_trip_failures;
  }

  struct Bad {
    const char* text;
    int line, column;
  };
  const Bad bad[] = {{"q1^(1/2)", 1, 4}, {"q1^p1", 1, 4},       {"q1 +\n  * p1", 2, 3}, {"(q1 + p1", 1, 9},
                     {"1/q1", 1, 3},     {"q1 $ 2", 1, 4},      {"0.5*k*q1", 1, 5},     {"q1^-2", 1, 4}};
  int unpositioned = 0;
  for (const auto& e : bad) {
    try {
      parse(e.text, strict);
      ++unpositioned;
    } catch (const ParseError& err) {
      if (err.line() != e.line || err.column() != e.column) ++unpositioned;
    }
  }
  int lower_errors = 0;
  for (const char* text : {"q1 + Q1", "m*q1"}) {
    try {
      lower(parse(text), {});
    } catch (const ParseError& err) {
      lower_errors += err.line() >= 1 && err.column() >= 1;
    }
  }
  const bool ok = worst < kTol && round_trip_failures == 0 && unpositioned == 0 && lower_errors == 2;
  return {ok, measure("model lowering", worst, kTol) + ", round trip " + std::to_string(50 - round_trip_failures) +
                  "/50, positioned diagnostics " + std::to_string(std::size(bad) - unpositioned + lower_errors) +
                  "/" + std::to_string(std::size(bad) + 2)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nhnc acceptance criteria"};
  std::vector<int> expect_fail;
  std::vector<int> only;
  app.add_option("--expect-fail", expect_fail, "criteria known to fail; exit 0 iff exactly these fail")
      ->check(CLI::Range(1, 8));
  app.add_option("--only", only, "run only these criteria")->check(CLI::Range(1, 8));
  app.add_flag("-v,--verbose", verbose, "per-point detail where available");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"algebra suite", algebra_suite},     {"Seiberg-Witten suite", sw_suite},
      {"Dyson suite", dyson_suite},         {"pipeline cross-check", pipeline_suite},
      {"limit spectra", limit_suite},       {"noncommutative spectrum", nc_suite},
      {"Wigner suite", wigner_suite},       {"parser suite", parser_suite}};

  const std::set<int> selected(only.begin(), only.end()), expected(expect_fail.begin(), expect_fail.end());
  std::set<int> failed;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    Outcome r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r = {false, std::string("error: ") + e.what()};
    }
    if (!r.passed) failed.insert(id);
    std::printf("criterion %d: %s  %s: %s\n", id, r.passed ? "PASS" : "FAIL", criteria[i].first, r.detail.c_str());
    std::fflush(stdout);
  }

  std::set<int> expected_run;
  for (int id : expected)
    if (selected.empty() || selected.count(id)) expected_run.insert(id);
  if (failed.empty() && expected_run.empty()) return 0;
  if (!expect_fail.empty() && failed == expected_run) {
    std::printf("failures match --expect-fail\n");
    return 0;
  }
  return 1;
}
