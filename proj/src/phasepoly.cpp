#include "nhnc/phasepoly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "nhnc/errors.hpp"

namespace nhnc {

VariableOrder::VariableOrder(int n_modes) : n_modes_(n_modes) {
  if (n_modes < 1) throw InvalidParameter("VariableOrder: n_modes must be >= 1");
}

int VariableOrder::position(int mode) const {
  if (mode < 0 || mode >= n_modes_) throw DimensionMismatch("mode index out of range");
  return mode;
}

int VariableOrder::momentum(int mode) const {
  if (mode < 0 || mode >= n_modes_) throw DimensionMismatch("mode index out of range");
  return n_modes_ + mode;
}

std::string VariableOrder::name(int index, bool capital) const {
  if (index < 0 || index >= dimension()) throw DimensionMismatch("variable index out of range");
  char letter = is_position(index) ? 'q' : 'p';
  if (capital) letter = static_cast<char>(letter - 'a' + 'A');
  return std::string(1, letter) + std::to_string(mode_of(index) + 1);
}

int total_degree(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), 0);
}

bool GradedLex::operator()(const Exponents& a, const Exponents& b) const {
  const int da = total_degree(a);
  const int db = total_degree(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [](auto x, auto y) { return x > y; });
}

PhaseSymbol::PhaseSymbol(VariableOrder order) : order_(order) {}

PhaseSymbol::PhaseSymbol(VariableOrder order, TermMap terms)
    : order_(order), terms_(std::move(terms)) {
  for (const auto& [e, c] : terms_) {
    if (static_cast<int>(e.size()) != order_.dimension())
      throw DimensionMismatch("exponent length does not match the variable order");
  }
  prune();
}

PhaseSymbol PhaseSymbol::constant(VariableOrder order, Complex c) {
  TermMap t;
  t.emplace(Exponents(order.dimension(), 0), c);
  return PhaseSymbol(order, std::move(t));
}

PhaseSymbol PhaseSymbol::variable(VariableOrder order, int index, Complex c) {
  if (index < 0 || index >= order.dimension())
    throw DimensionMismatch("variable index out of range");
  Exponents e(order.dimension(), 0);
  e[index] = 1;
  TermMap t;
  t.emplace(std::move(e), c);
  return PhaseSymbol(order, std::move(t));
}

PhaseSymbol PhaseSymbol::monomial(VariableOrder order, Exponents exps, Complex c) {
  TermMap t;
  t.emplace(std::move(exps), c);
  return PhaseSymbol(order, std::move(t));
}

int PhaseSymbol::degree() const {
  if (terms_.empty()) return -1;
  return total_degree(terms_.rbegin()->first);
}

Complex PhaseSymbol::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Complex{} : it->second;
}

Complex PhaseSymbol::constant_term() const {
  return coefficient(Exponents(order_.dimension(), 0));
}

bool PhaseSymbol::depends_only_on_mode(int mode) const {
  for (const auto& [e, c] : terms_) {
    for (int a = 0; a < order_.dimension(); ++a) {
      if (e[a] != 0 && order_.mode_of(a) != mode) return false;
    }
  }
  return true;
}

void PhaseSymbol::prune() {
  std::erase_if(terms_, [](const auto& kv) { return std::abs(kv.second) < kPruneThreshold; });
}

namespace {

void require_same_order(const PhaseSymbol& f, const PhaseSymbol& g) {
  if (!(f.order() == g.order())) throw DimensionMismatch("symbols use different variable orders");
}

void require_length(const VariableOrder& order, std::size_t n) {
  if (static_cast<int>(n) != order.dimension())
    throw DimensionMismatch("vector length does not match the phase-space dimension");
}

}  // namespace

PhaseSymbol add(const PhaseSymbol& f, const PhaseSymbol& g) {
  require_same_order(f, g);
  auto terms = f.terms();
  for (const auto& [e, c] : g.terms()) terms[e] += c;
  return PhaseSymbol(f.order(), std::move(terms));
}

PhaseSymbol subtract(const PhaseSymbol& f, const PhaseSymbol& g) {
  return add(f, scale(g, -1.0));
}

PhaseSymbol scale(const PhaseSymbol& f, Complex c) {
  auto terms = f.terms();
  for (auto& [e, v] : terms) v *= c;
  return PhaseSymbol(f.order(), std::move(terms));
}

PhaseSymbol pointwise_mul(const PhaseSymbol& f, const PhaseSymbol& g) {
  require_same_order(f, g);
  PhaseSymbol::TermMap terms;
  const int n = f.order().dimension();
  Exponents e(n);
  for (const auto& [ef, cf] : f.terms()) {
    for (const auto& [eg, cg] : g.terms()) {
      for (int a = 0; a < n; ++a) e[a] = static_cast<std::uint16_t>(ef[a] + eg[a]);
      terms[e] += cf * cg;
    }
  }
  return PhaseSymbol(f.order(), std::move(terms));
}

PhaseSymbol power(const PhaseSymbol& f, unsigned n) {
  PhaseSymbol result = PhaseSymbol::constant(f.order(), 1.0);
  PhaseSymbol base = f;
  while (n > 0) {
    if (n & 1u) result = pointwise_mul(result, base);
    n >>= 1u;
    if (n > 0) base = pointwise_mul(base, base);
  }
  return result;
}

PhaseSymbol partial(const PhaseSymbol& f, int index) {
  if (index < 0 || index >= f.order().dimension())
    throw DimensionMismatch("partial: variable index out of range");
  PhaseSymbol::TermMap terms;
  for (const auto& [e, c] : f.terms()) {
    if (e[index] == 0) continue;
    Exponents d = e;
    --d[index];
    terms[d] += c * static_cast<double>(e[index]);
  }
  return PhaseSymbol(f.order(), std::move(terms));
}

PhaseSymbol shift(const PhaseSymbol& f, std::span<const Complex> s) {
  require_length(f.order(), s.size());
  const int n = f.order().dimension();
  PhaseSymbol result(f.order());
  // Each monomial prod_a z_a^{k_a} becomes prod_a (z_a + s_a)^{k_a}.
  for (const auto& [e, c] : f.terms()) {
    PhaseSymbol term = PhaseSymbol::constant(f.order(), c);
    for (int a = 0; a < n; ++a) {
      if (e[a] == 0) continue;
      PhaseSymbol factor = add(PhaseSymbol::variable(f.order(), a),
                               PhaseSymbol::constant(f.order(), s[a]));
      term = pointwise_mul(term, power(factor, e[a]));
    }
    result = add(result, term);
  }
  return result;
}

PhaseSymbol linear_substitute(const PhaseSymbol& f, std::span<const double> m) {
  const int n = f.order().dimension();
  if (static_cast<int>(m.size()) != n * n)
    throw DimensionMismatch("linear_substitute: matrix size does not match the dimension");
  std::vector<PhaseSymbol> images;
  images.reserve(n);
  for (int a = 0; a < n; ++a) {
    PhaseSymbol::TermMap t;
    for (int b = 0; b < n; ++b) {
      Exponents e(n, 0);
      e[b] = 1;
      t.emplace(std::move(e), m[a * n + b]);
    }
    images.emplace_back(f.order(), std::move(t));
  }
  PhaseSymbol result(f.order());
  for (const auto& [e, c] : f.terms()) {
    PhaseSymbol term = PhaseSymbol::constant(f.order(), c);
    for (int a = 0; a < n; ++a) {
      if (e[a] != 0) term = pointwise_mul(term, power(images[a], e[a]));
    }
    result = add(result, term);
  }
  return result;
}

PhaseSymbol real_part(const PhaseSymbol& f) {
  auto terms = f.terms();
  for (auto& [e, c] : terms) c = c.real();
  return PhaseSymbol(f.order(), std::move(terms));
}

PhaseSymbol conjugate(const PhaseSymbol& f) {
  auto terms = f.terms();
  for (auto& [e, c] : terms) c = std::conj(c);
  return PhaseSymbol(f.order(), std::move(terms));
}

Complex eval(const PhaseSymbol& f, std::span<const Complex> z) {
  require_length(f.order(), z.size());
  Complex sum{};
  for (const auto& [e, c] : f.terms()) {
    Complex v = c;
    for (std::size_t a = 0; a < e.size(); ++a) {
      for (int k = 0; k < e[a]; ++k) v *= z[a];
    }
    sum += v;
  }
  return sum;
}

Complex eval(const PhaseSymbol& f, std::initializer_list<Complex> z) {
  return eval(f, std::span<const Complex>(z.begin(), z.size()));
}

double max_abs_imag(const PhaseSymbol& f) {
  double m = 0.0;
  for (const auto& [e, c] : f.terms()) m = std::max(m, std::abs(c.imag()));
  return m;
}

double max_abs_coeff(const PhaseSymbol& f) {
  double m = 0.0;
  for (const auto& [e, c] : f.terms()) m = std::max(m, std::abs(c));
  return m;
}

double max_coeff_diff(const PhaseSymbol& f, const PhaseSymbol& g) {
  require_same_order(f, g);
  double m = 0.0;
  for (const auto& [e, c] : f.terms()) m = std::max(m, std::abs(c - g.coefficient(e)));
  for (const auto& [e, c] : g.terms()) {
    if (!f.terms().contains(e)) m = std::max(m, std::abs(c));
  }
  return m;
}

bool approx_equal(const PhaseSymbol& f, const PhaseSymbol& g, double tol) {
  return max_coeff_diff(f, g) <= tol;
}

PhaseSymbol operator+(const PhaseSymbol& f, const PhaseSymbol& g) { return add(f, g); }
PhaseSymbol operator-(const PhaseSymbol& f, const PhaseSymbol& g) { return subtract(f, g); }
PhaseSymbol operator-(const PhaseSymbol& f) { return scale(f, -1.0); }
PhaseSymbol operator*(const PhaseSymbol& f, const PhaseSymbol& g) { return pointwise_mul(f, g); }
PhaseSymbol operator*(Complex c, const PhaseSymbol& f) { return scale(f, c); }
PhaseSymbol operator*(const PhaseSymbol& f, Complex c) { return scale(f, c); }
PhaseSymbol operator+(const PhaseSymbol& f, Complex c) {
  return add(f, PhaseSymbol::constant(f.order(), c));
}

std::string format_double(double x) {
  if (x == 0.0) x = 0.0;  // drop negative zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

std::string render(const PhaseSymbol& f, bool capital) {
  std::string out;
  const auto& order = f.order();
  for (const auto& [e, c] : f.terms()) {
    out += '(' + format_double(c.real()) + ',' + format_double(c.imag()) + ')';
    for (int a = 0; a < order.dimension(); ++a) {
      if (e[a] == 0) continue;
      out += ' ' + order.name(a, capital);
      if (e[a] > 1) out += '^' + std::to_string(e[a]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace nhnc
