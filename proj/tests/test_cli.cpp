#include <doctest.h>

#include <sstream>

#include "commands.hpp"
#include "config.hpp"
#include "nhnc/errors.hpp"
#include "nhnc/oscillator.hpp"

using namespace nhnc;
using namespace nhnc::cli;

namespace {

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (char c : line) {
      if (c == '"') {
        quoted = !quoted;
      } else if (c == ',' && !quoted) {
        cells.push_back(cell);
        cell.clear();
      } else {
        cell += c;
      }
    }
    cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::string run_sweep(const RunConfig& cfg, int levels, Method m, int jobs) {
  std::ostringstream out;
  CHECK(cmd_sweep(cfg, levels, m, jobs, out) == kOk);
  return out.str();
}

}  // namespace

TEST_CASE("config parsing") {
  const auto cfg = parse_config(
      "# two modes\n"
      "m = 1.5\n"
      "w2 = 3/2   # expression\n"
      "d1 = 0.3i\n"
      "theta = 0.1\n"
      "thB2 = 0.25\n"
      "cutoff = 32\n"
      "sweep = zeta:0:0.1:3\n"
      "sweep = g1 0 1 2\n");
  CHECK(cfg.osc.m == 1.5);
  CHECK(parse_config("rtol = 1e-15\n").rtol == 1e-15);
  CHECK(cfg.osc.omega[1] == 1.5);
  CHECK(cfg.osc.delta[0] == Complex{0.0, 0.3});
  CHECK(cfg.theta == 0.1);
  CHECK(cfg.phases.B[1] == 0.25);
  CHECK(cfg.cutoff == 32);
  REQUIRE(cfg.sweep.size() == 2);
  CHECK(cfg.sweep[0].name == "zeta");
  CHECK(cfg.sweep[0].at(2) == doctest::Approx(0.1));
  const auto grid = cfg.grid();
  REQUIRE(grid.size() == 6);
  // last axis fastest
  CHECK(grid[1].osc.gamma[0] == 1.0);
  CHECK(grid[1].zeta == 0.0);
  CHECK(grid[5].zeta == doctest::Approx(0.1));
  CHECK(!cfg.nu);
}

TEST_CASE("config errors") {
  CHECK_THROWS_WITH(parse_config("m = 1\nomega = 2\n"), doctest::Contains("config line 2: unknown key 'omega'"));
  CHECK_THROWS_AS(parse_config("m = 1\nm = 2\n"), InvalidParameter);
  CHECK_THROWS_AS(parse_config("m = q1\n"), Error);
  CHECK_THROWS_AS(parse_config("cutoff = 8\n").validate(), InvalidParameter);
  CHECK_THROWS_AS(parse_config("cutoff = 128\n").validate(), InvalidParameter);
  CHECK_THROWS_AS(parse_config("m = -1\n").validate(), Error);
  CHECK_THROWS_AS(parse_config("sweep = cutoff:16:32:2\n"), InvalidParameter);
  CHECK_THROWS_AS(parse_config("theta = 1\nzeta = 1\n").validate(), InvalidAlgebra);
}

TEST_CASE("exit codes") {
  CHECK(exit_code_for(NonConvergence("x")) == kNonConvergence);
  CHECK(exit_code_for(InvalidParameter("x")) == kValidation);
  CHECK(exit_code_for(std::runtime_error("x")) == kValidation);
  std::ostringstream out;
  CHECK(cmd_check_algebra(parse_config("theta = 0.3\nzeta = 0.2\nhbar = 0.9\n"), out) == kOk);
  CHECK(out.str().find("FAIL") == std::string::npos);
}

TEST_CASE("transform stages") {
  const auto cfg = parse_config("w2 = 1.5\ng1 = 0.2\nd1 = 0.3\n");
  std::ostringstream nhnc_out;
  CHECK(cmd_transform(cfg, "nhnc", false, false, nhnc_out) == kOk);
  CHECK(nhnc_out.str().find("(0.0000000000000000e+00,2.9999999999999999e-01) q1\n") != std::string::npos);
  // real Dyson coefficients: the shifted oscillator with a real constant
  std::ostringstream hnc_out;
  CHECK(cmd_transform(cfg, "hnc", false, false, hnc_out) == kOk);
  CHECK(hnc_out.str().rfind("(4.4999999999999998e-02,0.0000000000000000e+00)\n", 0) == 0);
  CHECK(hnc_out.str().find(",-") == std::string::npos);
  std::ostringstream hc_out;
  const auto nc = parse_config("w2 = 1.5\ng1 = 0.2\nd1 = 0.3\ntheta = 0.1\nzeta = 0.05\nthA1 = 0.3\n");
  CHECK(cmd_transform(nc, "hc", true, true, hc_out) == kOk);
  CHECK(hc_out.str().find("# forward map") != std::string::npos);
  CHECK(hc_out.str().find(" Q1 P2\n") != std::string::npos);
  std::ostringstream bad;
  CHECK_THROWS_AS(cmd_transform(cfg, "xyz", false, false, bad), InvalidParameter);
}

TEST_CASE("commutative Hermitian spectrum is the known ladder") {
  const auto sp = compute_spectrum(parse_config("hbar = 1\n"), 6, Method::both);
  const std::vector<double> ladder{1, 2, 2, 3, 3, 3};
  REQUIRE(sp.rows.size() == 6);
  for (int i = 0; i < 6; ++i) {
    CHECK(sp.rows[i].closed == doctest::Approx(ladder[i]).epsilon(1e-12));
    CHECK(sp.rows[i].oracle == doctest::Approx(ladder[i]).epsilon(1e-10));
  }
  CHECK(sp.exit_code == kOk);
}

TEST_CASE("non-Hermitian limit: closed form equals the oracle") {
  const auto sp = compute_spectrum(parse_config("w2 = 2\ng1 = 0.2\nd1 = 0.3\nd2 = 0.4\nm = 1.2\n"), 6, Method::both);
  for (const auto& r : sp.rows) {
    CHECK(r.error.empty());
    CHECK(std::abs(r.closed - r.oracle) <= 1e-8 * std::abs(r.oracle));
  }
}

TEST_CASE("spectrum CSV and per-row failures") {
  std::ostringstream out, err;
  CHECK(cmd_spectrum(parse_config("w2 = 1.5\ntheta = 0.1\nzeta = 0.05\n"), 3, Method::both, out, err) == kOk);
  const auto rows = csv_rows(out.str());
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == std::vector<std::string>{"n1", "n2", "closed_form", "oracle", "abs_diff"});
  for (int i = 1; i < 4; ++i) CHECK(!rows[i][4].empty());
  CHECK(err.str().empty());
  // unreachable tolerance: every row reports non-convergence
  std::ostringstream out2, err2;
  CHECK(cmd_spectrum(parse_config("w2 = 1.5\ntheta = 0.1\nrtol = 1e-15\ncutoff = 32\n"), 2, Method::oracle, out2, err2) ==
        kNonConvergence);
  CHECK(err2.str().find("row 0: oracle: ") != std::string::npos);
  // the closed form is not offered for free-form Hamiltonians
  const auto custom = parse_config("hamiltonian = p1^2/2 + q1^2/2 + p2^2/2 + q2^2\n");
  const auto sp = compute_spectrum(custom, 2, Method::both);
  CHECK(sp.rows[0].oracle == doctest::Approx(0.5 + std::sqrt(0.5)).epsilon(1e-10));
  CHECK(sp.rows[0].error.find("closed: ") == 0);
}

TEST_CASE("sweep output does not depend on the number of jobs") {
  const auto cfg = parse_config("w2 = 1.5\nd1 = 0.2\ncutoff = 32\nsweep = theta:0:0.1:3\nsweep = zeta:0:0.05:2\n");
  const auto one = run_sweep(cfg, 3, Method::both, 1);
  CHECK(one == run_sweep(cfg, 3, Method::both, 4));
  CHECK(one == run_sweep(cfg, 3, Method::both, 0));
  const auto rows = csv_rows(one);
  CHECK(rows[0] == std::vector<std::string>{"point", "theta", "zeta", "n1", "n2", "closed_form", "oracle", "abs_diff",
                                            "error"});
  CHECK(rows.size() == 1 + 6 * 3);
}

TEST_CASE("zero-length sweep is a single point") {
  const auto rows = csv_rows(run_sweep(parse_config("w2 = 1.5\n"), 2, Method::closed, 1));
  REQUIRE(rows.size() == 3);
  CHECK(rows[0][1] == "n1");
  CHECK(rows[1][0] == "0");
  CHECK(rows[2][0] == "0");
}

TEST_CASE("sweep errors stay in their row") {
  // zeta = 4 makes theta zeta / hbar^2 = 1 at the last point only
  const auto rows =
      csv_rows(run_sweep(parse_config("w2 = 1.5\ntheta = 0.25\nsweep = zeta:0:4:2\n"), 1, Method::closed, 2));
  REQUIRE(rows.size() == 3);
  CHECK(rows[1].back().empty());
  CHECK(!rows[2].back().empty());
}

TEST_CASE("theta sweep is continuous") {
  const auto rows = csv_rows(run_sweep(parse_config("w2 = 1.5\ncutoff = 32\nsweep = theta:0:0.2:11\n"), 1,
                                       Method::oracle, 0));
  REQUIRE(rows.size() == 12);
  std::vector<double> e;
  for (std::size_t i = 1; i < rows.size(); ++i) e.push_back(std::stod(rows[i][5]));
  std::vector<double> inc;
  for (std::size_t i = 1; i < e.size(); ++i) inc.push_back(std::abs(e[i] - e[i - 1]));
  for (std::size_t i = 0; i < inc.size(); ++i) {
    double neighbour = 0.0;
    if (i > 0) neighbour = std::max(neighbour, inc[i - 1]);
    if (i + 1 < inc.size()) neighbour = std::max(neighbour, inc[i + 1]);
    CHECK(inc[i] <= 10.0 * neighbour + 1e-12);
  }
}

TEST_CASE("gamma sweep leaves the spacings alone") {
  const auto rows = csv_rows(run_sweep(parse_config("w2 = 1.5\nsweep = g1:0:0.5:6\n"), 4, Method::both, 0));
  REQUIRE(rows.size() == 1 + 6 * 4);
  for (int p = 0; p < 6; ++p) {
    const auto& base = rows[1 + 4 * p];
    for (int l = 1; l < 4; ++l) {
      const auto& r = rows[1 + 4 * p + l];
      const double spacing = std::stod(r[5]) - std::stod(base[5]);
      const double ref = std::stod(rows[1 + l][5]) - std::stod(rows[1][5]);
      CHECK(spacing == doctest::Approx(ref).epsilon(1e-12));
    }
  }
}

TEST_CASE("wigner command") {
  std::ostringstream out;
  CHECK(cmd_wigner(parse_config("w1 = 1.2\n"), 1, "ground", 33, out) == kOk);
  const auto text = out.str();
  const auto pos = text.find("normalization=");
  REQUIRE(pos != std::string::npos);
  CHECK(std::abs(std::stod(text.substr(pos + 14)) - 1.0) < 1e-6);

  std::ostringstream excited;
  CHECK(cmd_wigner(parse_config("\n"), 2, "1", 33, excited) == kOk);
  // odd count: the middle row sits on the origin
  const auto rows = csv_rows(excited.str());
  const auto& mid = rows[2 + 16 * 33 + 16];
  CHECK(std::abs(std::stod(mid[0])) < 1e-12);
  CHECK(std::stod(mid[2]) < 0.0);

  std::ostringstream nc;
  CHECK_THROWS_AS(cmd_wigner(parse_config("theta = 0.1\n"), 1, "ground", 33, nc), SliceError);
  CHECK_THROWS_AS(cmd_wigner(parse_config("\n"), 3, "ground", 33, nc), InvalidParameter);
}

TEST_CASE("errata report on a limit-only grid") {
  std::ostringstream out;
  CHECK(cmd_errata(parse_config("w2 = 1.5\nd1 = 0.2\n"), 3, out) == kOk);
  CHECK(!out.str().empty());
}
