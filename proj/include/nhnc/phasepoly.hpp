#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace nhnc {

using Complex = std::complex<double>;

// Coefficients below this magnitude are dropped after every operation.
inline constexpr double kPruneThreshold = 1e-14;

// Phase-space variable layout for n modes: index a in [0, 2n) maps to
// (q_1..q_n, p_1..p_n).
class VariableOrder {
 public:
  explicit VariableOrder(int n_modes = 2);

  int n_modes() const { return n_modes_; }
  int dimension() const { return 2 * n_modes_; }

  int position(int mode) const;  // 0-based mode
  int momentum(int mode) const;
  bool is_position(int index) const { return index < n_modes_; }
  int mode_of(int index) const { return index % n_modes_; }

  // "q1", "p2", ... or "Q1", "P2", ... when `capital` is set.
  std::string name(int index, bool capital = false) const;

  friend bool operator==(const VariableOrder&, const VariableOrder&) = default;

 private:
  int n_modes_;
};

using Exponents = std::vector<std::uint16_t>;

// Graded lexicographic: lower total degree first; within a degree, larger
// exponent on the earlier variable first (q1 before q2 before p1 ...).
struct GradedLex {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

int total_degree(const Exponents& e);

// Complex multivariate polynomial over the phase-space variables of an order.
// Immutable by convention: every operation returns a new, pruned symbol.
class PhaseSymbol {
 public:
  using TermMap = std::map<Exponents, Complex, GradedLex>;

  explicit PhaseSymbol(VariableOrder order = VariableOrder{});
  PhaseSymbol(VariableOrder order, TermMap terms);

  static PhaseSymbol constant(VariableOrder order, Complex c);
  static PhaseSymbol variable(VariableOrder order, int index, Complex c = 1.0);
  static PhaseSymbol monomial(VariableOrder order, Exponents exps, Complex c);

  const VariableOrder& order() const { return order_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;  // -1 for the zero symbol
  Complex coefficient(const Exponents& e) const;
  Complex constant_term() const;
  // True when only variables of `mode` (0-based) appear.
  bool depends_only_on_mode(int mode) const;

 private:
  void prune();

  VariableOrder order_;
  TermMap terms_;
};

PhaseSymbol add(const PhaseSymbol& f, const PhaseSymbol& g);
PhaseSymbol subtract(const PhaseSymbol& f, const PhaseSymbol& g);
PhaseSymbol scale(const PhaseSymbol& f, Complex c);
PhaseSymbol pointwise_mul(const PhaseSymbol& f, const PhaseSymbol& g);
PhaseSymbol power(const PhaseSymbol& f, unsigned n);
PhaseSymbol partial(const PhaseSymbol& f, int index);
// f(z + s), expanded exactly.
PhaseSymbol shift(const PhaseSymbol& f, std::span<const Complex> s);
// f(M z) for a dimension x dimension row-major matrix M.
PhaseSymbol linear_substitute(const PhaseSymbol& f, std::span<const double> row_major);
PhaseSymbol real_part(const PhaseSymbol& f);
PhaseSymbol conjugate(const PhaseSymbol& f);

Complex eval(const PhaseSymbol& f, std::span<const Complex> z);
Complex eval(const PhaseSymbol& f, std::initializer_list<Complex> z);
double max_abs_imag(const PhaseSymbol& f);
double max_abs_coeff(const PhaseSymbol& f);
// max |f_e - g_e| over the union of term sets.
double max_coeff_diff(const PhaseSymbol& f, const PhaseSymbol& g);
bool approx_equal(const PhaseSymbol& f, const PhaseSymbol& g, double tol);

PhaseSymbol operator+(const PhaseSymbol& f, const PhaseSymbol& g);
PhaseSymbol operator-(const PhaseSymbol& f, const PhaseSymbol& g);
PhaseSymbol operator-(const PhaseSymbol& f);
PhaseSymbol operator*(const PhaseSymbol& f, const PhaseSymbol& g);
PhaseSymbol operator*(Complex c, const PhaseSymbol& f);
PhaseSymbol operator*(const PhaseSymbol& f, Complex c);
PhaseSymbol operator+(const PhaseSymbol& f, Complex c);

// One term per line, graded-lex order:
//   (re,im) q1^2 p2
// Variables are capitalised when `capital` is set. The zero symbol renders
// as an empty string.
std::string render(const PhaseSymbol& f, bool capital = false);

// Full-precision scientific rendering used by every numeric output.
std::string format_double(double x);

}  // namespace nhnc
