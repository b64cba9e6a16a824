#include <doctest.h>

#include "common.hpp"
#include "nhnc/hamparse.hpp"
#include "nhnc/oscillator.hpp"
#include "nhnc/suites.hpp"

using namespace nhnc;
using namespace testing;

namespace {

std::string random_expr(std::mt19937_64& rng, int depth) {
  static const char* atoms[] = {"q1", "q2", "p1", "p2", "Q1", "P2", "m", "w1", "d2", "hbar", "i", "2", "0.5", "3i", "1e-3"};
  const auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
  if (depth == 0) return atoms[pick(15)];
  switch (pick(7)) {
    case 0: return random_expr(rng, depth - 1) + " + " + random_expr(rng, depth - 1);
    case 1: return random_expr(rng, depth - 1) + " - " + random_expr(rng, depth - 1);
    case 2: return random_expr(rng, depth - 1) + "*" + random_expr(rng, depth - 1);
    case 3: return "(" + random_expr(rng, depth - 1) + ")/(" + std::string(atoms[6 + pick(4)]) + ")";
    case 4: return "-" + random_expr(rng, depth - 1);
    case 5: return "(" + random_expr(rng, depth - 1) + ")^" + std::to_string(pick(4));
    default: return "(" + random_expr(rng, depth - 1) + ")";
  }
}

std::map<std::string, Complex> bindings_of(const OscillatorParams& o) {
  return {{"m", o.m},         {"w1", o.omega[0]}, {"w2", o.omega[1]}, {"g1", o.gamma[0]},
          {"g2", o.gamma[1]}, {"d1", o.delta[0]}, {"d2", o.delta[1]}, {"hbar", o.hbar}};
}

const char* kModel =
    "p1^2/(2*m) + 0.5*m*w1^2*q1^2 + g1*p1 + i*d1*q1\n"
    "+ p2^2/(2*m) + 0.5*m*w2^2*q2^2 + g2*p2 + i*d2*q2";

ParseError parse_error(const std::string& text, const ParseOptions& opt = {}) {
  try {
    parse(text, opt);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error for: " << text);
  return ParseError(0, 0, "");
}

}  // namespace

TEST_CASE("kinetic plus potential parses") {
  const auto e = parse("p1^2/(2*m) + 0.5*m*w1^2*q1^2");
  CHECK(e.root().kind == HamNode::Kind::add);
  CHECK(render(e) == "p1^2/(2*m) + 0.5*m*w1^2*q1^2");
}

TEST_CASE("imaginary coefficient") {
  const auto e = parse("i*d1*q1");
  const auto s = lower(e, {{"d1", 0.3}});
  CHECK(s.coefficient({1, 0, 0, 0}) == Complex{0.0, 0.3});
  CHECK(lower(parse("2i*q2"), {}).coefficient({0, 1, 0, 0}) == Complex{0.0, 2.0});
}

TEST_CASE("exponent diagnostics") {
  const auto frac = parse_error("q1^(1/2)");
  CHECK(frac.message() == "fractional exponent");
  CHECK(frac.line() == 1);
  CHECK(frac.column() == 4);
  CHECK(parse_error("q1^p1").message() == "variable exponent");
  CHECK(parse_error("q1^-2").message() == "negative exponent");
  CHECK(parse_error("q1^m").message() == "exponent must be a constant integer");
  CHECK(parse("q1^(4/2)").root().exponent == 2);
}

TEST_CASE("syntax diagnostics carry position and expectations") {
  const auto e = parse_error("q1 +\n  * p1");
  CHECK(e.line() == 2);
  CHECK(e.column() == 3);
  CHECK(e.expected() == std::vector<std::string>{"number", "identifier", "'('", "'-'"});
  CHECK(std::string(e.what()) ==
        "line 2, column 3: unexpected '*'; expected one of number, identifier, '(', '-'");
  CHECK(parse_error("(q1 + p1").expected() == std::vector<std::string>{"')'"});
  CHECK(parse_error("q1 p1").message() == "unexpected 'p1'");
  CHECK(parse_error("q1 $ 2").message() == "unexpected character '$'");
  CHECK(parse_error("1/q1").message() == "variable in denominator");
  CHECK(parse_error("").message() == "unexpected end of input");
  ParseOptions strict;
  strict.known_parameters = standard_parameters();
  const auto u = parse_error("0.5*k*q1^2", strict);
  CHECK(u.message() == "unknown identifier 'k'");
  CHECK(u.column() == 5);
}

TEST_CASE("lowering") {
  const auto s = lower(parse("q1*q2"), {});
  CHECK(s.terms().size() == 1);
  CHECK(s.coefficient({1, 1, 0, 0}) == Complex{1.0});
  CHECK(max_coeff_diff(lower(parse("(q1 + p1)^2"), {}), mono({2, 0, 0, 0}) + mono({1, 0, 1, 0}, 2.0) +
                                                           mono({0, 0, 2, 0})) == 0.0);
  CHECK(lower(parse("Q1*P2"), {}).coefficient({1, 0, 0, 1}) == Complex{1.0});
  CHECK(uses_capital_namespace(parse("Q1*P2")));
  CHECK(!uses_capital_namespace(parse("q1*p2")));
}

TEST_CASE("lowering errors") {
  CHECK_THROWS_AS(lower(parse("q1 + Q1"), {}), ParseError);
  CHECK_THROWS_WITH(lower(parse("m*q1"), {}), doctest::Contains("unbound parameter 'm'"));
  CHECK_THROWS_AS(lower(parse("q1/(m - m)"), {{"m", 1.0}}), ParseError);
}

TEST_CASE("model text lowers to the built Hamiltonian") {
  Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    const auto o = random_oscillator(rng, 0.5 + 0.1 * t);
    ParseOptions strict;
    strict.known_parameters = standard_parameters();
    const auto lowered = lower(parse(kModel, strict), bindings_of(o));
    CHECK(max_coeff_diff(lowered, build_h_nhnc(o)) < 1e-12);
  }
}

TEST_CASE("parse . render . parse is idempotent on 50 expressions") {
  std::vector<std::string> corpus{kModel,
                                  "q1",
                                  "-q1",
                                  "--q1",
                                  "-(q1 + p1)",
                                  "(-q1)^2",
                                  "-q1^2",
                                  "q1 - (p1 - q2)",
                                  "q1 - p1 - q2",
                                  "q1/(2*m)/w1",
                                  "q1/(2/m)",
                                  "a*(b*c)",
                                  "(a*b)*c",
                                  "2.5e-3*q1",
                                  "1e10",
                                  "0.1 + 0.2",
                                  "i",
                                  "3i*i",
                                  "(q1 + i*p1)^3",
                                  "theta*zeta/hbar^2",
                                  "((((q1))))",
                                  "q1^0",
                                  "p1^(2)^1",
                                  "nu*mu - 1"};
  std::mt19937_64 rng(50);
  while (corpus.size() < 50) corpus.push_back(random_expr(rng, 3));
  for (const auto& text : corpus) {
    CAPTURE(text);
    const auto a = parse(text);
    const auto r = render(a);
    const auto b = parse(r);
    CHECK(structurally_equal(a, b));
    CHECK(render(b) == r);
  }
}

TEST_CASE("lower distributes over +") {
  std::mt19937_64 rng(51);
  const std::map<std::string, Complex> env{{"m", 1.3}, {"w1", 0.7}, {"d2", Complex{0.2, -0.1}}, {"hbar", 1.1}};
  for (int t = 0; t < 30; ++t) {
    std::string sa = random_expr(rng, 3), sb = random_expr(rng, 3);
    // keep each side in one namespace
    for (auto* s : {&sa, &sb})
      for (auto& ch : *s) {
        if (ch == 'Q') ch = 'q';
        if (ch == 'P') ch = 'p';
      }
    const auto a = parse(sa), b = parse(sb);
    CAPTURE(sa);
    CAPTURE(sb);
    const auto sum = lower(a + b, env), parts = add(lower(a, env), lower(b, env));
    CHECK(max_coeff_diff(sum, parts) <= 1e-12 * std::max(1.0, max_abs_coeff(parts)));
  }
}

TEST_CASE("constant evaluation keeps tiny values") {
  CHECK(evaluate_constant(parse("1e-15")) == Complex{1e-15});
  CHECK(evaluate_constant(parse("3/2 + 2i")) == Complex{1.5, 2.0});
  CHECK(evaluate_constant(parse("2*m^2"), {{"m", 3.0}}) == Complex{18.0});
  CHECK_THROWS_WITH(evaluate_constant(parse("2*q1")), doctest::Contains("variable 'q1'"));
  CHECK_THROWS_WITH(evaluate_constant(parse("1/(1-1)")), doctest::Contains("division by zero"));
  CHECK_THROWS_AS(evaluate_constant(parse("m")), ParseError);
}

TEST_CASE("standard parameter names") {
  const auto p = standard_parameters();
  CHECK(p.size() == 12);
  CHECK(p.count("theta"));
  CHECK(!p.count("q1"));
}
