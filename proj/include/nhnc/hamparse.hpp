#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nhnc/errors.hpp"
#include "nhnc/phasepoly.hpp"

namespace nhnc {

// Positioned diagnostic from parse() or lower(). Lines and columns are 1-based.
class ParseError : public Error {
 public:
  ParseError(int line, int column, std::string message, std::vector<std::string> expected = {});

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  int line_;
  int column_;
  std::string message_;
  std::vector<std::string> expected_;
};

struct HamNode {
  enum class Kind { number, imaginary, parameter, variable, add, sub, mul, div, pow, neg };

  Kind kind = Kind::number;
  double value = 0.0;     // number: value; imaginary: value * i
  std::string name;       // parameter / variable spelling
  int variable_index = -1;
  bool capital = false;   // Q/P namespace
  int exponent = 0;       // pow
  std::shared_ptr<const HamNode> lhs, rhs;  // binary operands; neg/pow use lhs
  int line = 1, column = 1;
};

class HamExpr {
 public:
  HamExpr() = default;
  explicit HamExpr(std::shared_ptr<const HamNode> root) : root_(std::move(root)) {}

  const HamNode& root() const { return *root_; }
  bool empty() const { return !root_; }

  friend HamExpr operator+(const HamExpr& a, const HamExpr& b);

 private:
  std::shared_ptr<const HamNode> root_;
};

struct ParseOptions {
  // When set, identifiers outside this set (other than variables and `i`)
  // are rejected as unknown.
  std::optional<std::set<std::string>> known_parameters;
};

// m, w1, w2, g1, g2, d1, d2, hbar, theta, zeta, mu, nu
std::set<std::string> standard_parameters();

HamExpr parse(const std::string& text, const ParseOptions& options = {});
// Canonical text; parse(render(e)) reproduces e.
std::string render(const HamExpr& expr);
bool structurally_equal(const HamExpr& a, const HamExpr& b);

// Expands into a symbol over (q1, q2, p1, p2); capital variables map to the
// same slots. Throws ParseError for unbound parameters, division by zero and
// q/Q namespace mixing.
PhaseSymbol lower(const HamExpr& expr, const std::map<std::string, Complex>& bindings);
// Value of a variable-free expression, evaluated directly (no coefficient
// pruning, so tiny constants such as 1e-15 survive). Throws ParseError on
// variables, unbound parameters and division by zero.
Complex evaluate_constant(const HamExpr& expr, const std::map<std::string, Complex>& bindings = {});
// True when the expression uses the capital (Q, P) namespace.
bool uses_capital_namespace(const HamExpr& expr);

}  // namespace nhnc
