#include "nhnc/hamparse.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace nhnc {

namespace {

std::string format_diagnostic(int line, int column, const std::string& message,
                              const std::vector<std::string>& expected) {
  std::ostringstream os;
  os << "line " << line << ", column " << column << ": " << message;
  if (!expected.empty()) {
    os << "; expected ";
    if (expected.size() > 1) os << "one of ";
    for (std::size_t k = 0; k < expected.size(); ++k) os << (k ? ", " : "") << expected[k];
  }
  return os.str();
}

}  // namespace

ParseError::ParseError(int line, int column, std::string message, std::vector<std::string> expected)
    : Error(format_diagnostic(line, column, message, expected)),
      line_(line),
      column_(column),
      message_(std::move(message)),
      expected_(std::move(expected)) {}

std::set<std::string> standard_parameters() {
  return {"m", "w1", "w2", "g1", "g2", "d1", "d2", "hbar", "theta", "zeta", "mu", "nu"};
}

namespace {

using Node = HamNode;
using NodePtr = std::shared_ptr<const Node>;

struct Token {
  enum class Kind { number, imaginary, identifier, op, end };
  Kind kind = Kind::end;
  std::string text;
  double value = 0.0;
  int line = 1, column = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      Token t;
      t.line = line_;
      t.column = column_;
      if (pos_ >= text_.size()) {
        t.kind = Token::Kind::end;
        out.push_back(t);
        return out;
      }
      const char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        lex_number(t);
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
          advance();
        t.kind = Token::Kind::identifier;
        t.text = text_.substr(start, pos_ - start);
      } else if (std::string("+-*/^()").find(c) != std::string::npos) {
        t.kind = Token::Kind::op;
        t.text = std::string(1, c);
        advance();
      } else {
        throw ParseError(t.line, t.column, std::string("unexpected character '") + c + "'");
      }
      out.push_back(t);
    }
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }

  bool digit_at(std::size_t k) const {
    return k < text_.size() && std::isdigit(static_cast<unsigned char>(text_[k]));
  }

  void lex_number(Token& t) {
    const std::size_t start = pos_;
    while (digit_at(pos_)) advance();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      advance();
      while (digit_at(pos_)) advance();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t k = pos_ + 1;
      if (k < text_.size() && (text_[k] == '+' || text_[k] == '-')) ++k;
      if (digit_at(k)) {
        while (pos_ < k) advance();
        while (digit_at(pos_)) advance();
      }
    }
    t.text = text_.substr(start, pos_ - start);
    const auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.value);
    if (res.ec != std::errc() || res.ptr != t.text.data() + t.text.size())
      throw ParseError(t.line, t.column, "invalid number '" + t.text + "'");
    t.kind = Token::Kind::number;
    // `2i`: an imaginary literal when `i` is not the start of a longer name.
    if (pos_ < text_.size() && text_[pos_] == 'i') {
      const std::size_t k = pos_ + 1;
      if (k >= text_.size() || !(std::isalnum(static_cast<unsigned char>(text_[k])) || text_[k] == '_')) {
        advance();
        t.kind = Token::Kind::imaginary;
        t.text += 'i';
      }
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

int variable_slot(const std::string& name, bool& capital) {
  if (name.size() != 2 || (name[1] != '1' && name[1] != '2')) return -1;
  const int mode = name[1] - '1';
  const VariableOrder order(2);
  switch (name[0]) {
    case 'q': capital = false; return order.position(mode);
    case 'p': capital = false; return order.momentum(mode);
    case 'Q': capital = true; return order.position(mode);
    case 'P': capital = true; return order.momentum(mode);
    default: return -1;
  }
}

bool contains_variable(const Node& n) {
  if (n.kind == Node::Kind::variable) return true;
  if (n.lhs && contains_variable(*n.lhs)) return true;
  if (n.rhs && contains_variable(*n.rhs)) return true;
  return false;
}

const std::vector<std::string> kOperandExpected{"number", "identifier", "'('", "'-'"};

class Parser {
 public:
  Parser(std::vector<Token> tokens, const ParseOptions& options)
      : tokens_(std::move(tokens)), options_(options) {}

  NodePtr run() {
    auto e = expression();
    if (peek().kind != Token::Kind::end) {
      throw ParseError(peek().line, peek().column, "unexpected " + describe(peek()),
                       {"operator", "end of input"});
    }
    return e;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  Token take() { return tokens_[pos_++]; }
  bool at_op(char c) const { return peek().kind == Token::Kind::op && peek().text[0] == c; }

  static std::string describe(const Token& t) {
    return t.kind == Token::Kind::end ? "end of input" : "'" + t.text + "'";
  }

  static NodePtr make(Node n) { return std::make_shared<const Node>(std::move(n)); }

  static NodePtr binary(Node::Kind kind, NodePtr a, NodePtr b, const Token& op) {
    Node n;
    n.kind = kind;
    n.lhs = std::move(a);
    n.rhs = std::move(b);
    n.line = op.line;
    n.column = op.column;
    return make(std::move(n));
  }

  NodePtr expression() {
    auto lhs = term();
    while (at_op('+') || at_op('-')) {
      const Token op = take();
      auto rhs = term();
      lhs = binary(op.text[0] == '+' ? Node::Kind::add : Node::Kind::sub, lhs, rhs, op);
    }
    return lhs;
  }

  NodePtr term() {
    auto lhs = unary();
    while (at_op('*') || at_op('/')) {
      const Token op = take();
      const Token start = peek();
      auto rhs = unary();
      if (op.text[0] == '/' && contains_variable(*rhs))
        throw ParseError(start.line, start.column, "variable in denominator");
      lhs = binary(op.text[0] == '*' ? Node::Kind::mul : Node::Kind::div, lhs, rhs, op);
    }
    return lhs;
  }

  NodePtr unary() {
    if (at_op('-')) {
      const Token op = take();
      Node n;
      n.kind = Node::Kind::neg;
      n.lhs = unary();
      n.line = op.line;
      n.column = op.column;
      return make(std::move(n));
    }
    return power();
  }

  NodePtr power() {
    auto base = primary();
    if (!at_op('^')) return base;
    const Token op = take();
    const Token start = peek();
    auto exponent_tree = exponent_operand();
    Node n;
    n.kind = Node::Kind::pow;
    n.lhs = base;
    n.exponent = constant_exponent(*exponent_tree, start);
    n.line = op.line;
    n.column = op.column;
    return make(std::move(n));
  }

  // The exponent binds tighter than unary minus on the left, but `x^-2` is
  // parsed (and then rejected as negative) for a clearer diagnostic.
  NodePtr exponent_operand() {
    if (at_op('-')) {
      const Token op = take();
      Node n;
      n.kind = Node::Kind::neg;
      n.lhs = exponent_operand();
      n.line = op.line;
      n.column = op.column;
      return make(std::move(n));
    }
    return power();
  }

  static std::optional<Complex> evaluate_constant(const Node& n) {
    switch (n.kind) {
      case Node::Kind::number: return Complex{n.value, 0.0};
      case Node::Kind::imaginary: return Complex{0.0, n.value};
      case Node::Kind::parameter:
      case Node::Kind::variable: return std::nullopt;
      case Node::Kind::neg: {
        auto a = evaluate_constant(*n.lhs);
        return a ? std::optional<Complex>(-*a) : std::nullopt;
      }
      case Node::Kind::pow: {
        auto a = evaluate_constant(*n.lhs);
        return a ? std::optional<Complex>(std::pow(*a, n.exponent)) : std::nullopt;
      }
      default: break;
    }
    auto a = evaluate_constant(*n.lhs), b = evaluate_constant(*n.rhs);
    if (!a || !b) return std::nullopt;
    switch (n.kind) {
      case Node::Kind::add: return *a + *b;
      case Node::Kind::sub: return *a - *b;
      case Node::Kind::mul: return *a * *b;
      default: return *a / *b;
    }
  }

  static int constant_exponent(const Node& e, const Token& at) {
    if (contains_variable(e)) throw ParseError(at.line, at.column, "variable exponent");
    const auto v = evaluate_constant(e);
    if (!v) throw ParseError(at.line, at.column, "exponent must be a constant integer");
    if (v->imag() != 0.0 || !std::isfinite(v->real()))
      throw ParseError(at.line, at.column, "exponent must be a constant integer");
    const double x = v->real();
    if (std::abs(x - std::round(x)) > 1e-12) throw ParseError(at.line, at.column, "fractional exponent");
    if (x < 0.0) throw ParseError(at.line, at.column, "negative exponent");
    if (x > 64.0) throw ParseError(at.line, at.column, "exponent larger than 64");
    return static_cast<int>(std::round(x));
  }

  NodePtr primary() {
    const Token t = peek();
    Node n;
    n.line = t.line;
    n.column = t.column;
    switch (t.kind) {
      case Token::Kind::number:
        take();
        n.kind = Node::Kind::number;
        n.value = t.value;
        return make(std::move(n));
      case Token::Kind::imaginary:
        take();
        n.kind = Node::Kind::imaginary;
        n.value = t.value;
        return make(std::move(n));
      case Token::Kind::identifier: {
        take();
        if (t.text == "i") {
          n.kind = Node::Kind::imaginary;
          n.value = 1.0;
          return make(std::move(n));
        }
        bool capital = false;
        const int slot = variable_slot(t.text, capital);
        if (slot >= 0) {
          n.kind = Node::Kind::variable;
          n.name = t.text;
          n.variable_index = slot;
          n.capital = capital;
          return make(std::move(n));
        }
        if (options_.known_parameters && !options_.known_parameters->count(t.text))
          throw ParseError(t.line, t.column, "unknown identifier '" + t.text + "'");
        n.kind = Node::Kind::parameter;
        n.name = t.text;
        return make(std::move(n));
      }
      case Token::Kind::op:
        if (t.text == "(") {
          take();
          auto inner = expression();
          if (!at_op(')'))
            throw ParseError(peek().line, peek().column, "unexpected " + describe(peek()), {"')'"});
          take();
          return inner;
        }
        break;
      case Token::Kind::end: break;
    }
    throw ParseError(t.line, t.column, "unexpected " + describe(t), kOperandExpected);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const ParseOptions& options_;
};

int precedence(const Node& n) {
  switch (n.kind) {
    case Node::Kind::add:
    case Node::Kind::sub: return 1;
    case Node::Kind::mul:
    case Node::Kind::div: return 2;
    case Node::Kind::neg: return 3;
    case Node::Kind::pow: return 4;
    default: return 5;
  }
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void render_node(const Node& n, std::string& out);

void render_child(const Node& child, bool parens, std::string& out) {
  if (parens) out += '(';
  render_node(child, out);
  if (parens) out += ')';
}

void render_node(const Node& n, std::string& out) {
  switch (n.kind) {
    case Node::Kind::number: out += format_number(n.value); return;
    case Node::Kind::imaginary: out += n.value == 1.0 ? "i" : format_number(n.value) + "i"; return;
    case Node::Kind::parameter:
    case Node::Kind::variable: out += n.name; return;
    case Node::Kind::neg:
      out += '-';
      render_child(*n.lhs, precedence(*n.lhs) < 3, out);
      return;
    case Node::Kind::pow:
      render_child(*n.lhs, precedence(*n.lhs) < 5, out);
      out += '^';
      out += std::to_string(n.exponent);
      return;
    case Node::Kind::add:
    case Node::Kind::sub:
      render_child(*n.lhs, false, out);
      out += n.kind == Node::Kind::add ? " + " : " - ";
      render_child(*n.rhs, precedence(*n.rhs) <= 1, out);
      return;
    case Node::Kind::mul:
    case Node::Kind::div:
      render_child(*n.lhs, precedence(*n.lhs) < 2, out);
      out += n.kind == Node::Kind::mul ? "*" : "/";
      render_child(*n.rhs, precedence(*n.rhs) <= 2, out);
      return;
  }
}

bool equal_nodes(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Node::Kind::number:
    case Node::Kind::imaginary: return a.value == b.value;
    case Node::Kind::parameter:
    case Node::Kind::variable: return a.name == b.name;
    case Node::Kind::neg: return equal_nodes(*a.lhs, *b.lhs);
    case Node::Kind::pow: return a.exponent == b.exponent && equal_nodes(*a.lhs, *b.lhs);
    default: return equal_nodes(*a.lhs, *b.lhs) && equal_nodes(*a.rhs, *b.rhs);
  }
}

void namespaces(const Node& n, bool& lower_seen, bool& capital_seen) {
  if (n.kind == Node::Kind::variable) (n.capital ? capital_seen : lower_seen) = true;
  if (n.lhs) namespaces(*n.lhs, lower_seen, capital_seen);
  if (n.rhs) namespaces(*n.rhs, lower_seen, capital_seen);
}

const Node* first_capital_conflict(const Node& n, bool capital) {
  if (n.kind == Node::Kind::variable && n.capital != capital) return &n;
  for (const auto* child : {n.lhs.get(), n.rhs.get()}) {
    if (!child) continue;
    if (const Node* hit = first_capital_conflict(*child, capital)) return hit;
  }
  return nullptr;
}

const Node* first_variable(const Node& n) {
  if (n.kind == Node::Kind::variable) return &n;
  for (const auto* child : {n.lhs.get(), n.rhs.get()}) {
    if (!child) continue;
    if (const Node* hit = first_variable(*child)) return hit;
  }
  return nullptr;
}

PhaseSymbol lower_node(const Node& n, const std::map<std::string, Complex>& bindings) {
  const VariableOrder order(2);
  switch (n.kind) {
    case Node::Kind::number: return PhaseSymbol::constant(order, n.value);
    case Node::Kind::imaginary: return PhaseSymbol::constant(order, Complex{0.0, n.value});
    case Node::Kind::parameter: {
      const auto it = bindings.find(n.name);
      if (it == bindings.end()) throw ParseError(n.line, n.column, "unbound parameter '" + n.name + "'");
      return PhaseSymbol::constant(order, it->second);
    }
    case Node::Kind::variable: return PhaseSymbol::variable(order, n.variable_index);
    case Node::Kind::neg: return -lower_node(*n.lhs, bindings);
    case Node::Kind::pow: return power(lower_node(*n.lhs, bindings), static_cast<unsigned>(n.exponent));
    case Node::Kind::add: return lower_node(*n.lhs, bindings) + lower_node(*n.rhs, bindings);
    case Node::Kind::sub: return lower_node(*n.lhs, bindings) - lower_node(*n.rhs, bindings);
    case Node::Kind::mul: return lower_node(*n.lhs, bindings) * lower_node(*n.rhs, bindings);
    case Node::Kind::div: {
      const auto den = lower_node(*n.rhs, bindings);
      if (den.degree() > 0) throw ParseError(n.rhs->line, n.rhs->column, "variable in denominator");
      const Complex c = den.constant_term();
      if (c == Complex{}) throw ParseError(n.line, n.column, "division by zero");
      return scale(lower_node(*n.lhs, bindings), 1.0 / c);
    }
  }
  return PhaseSymbol(order);
}

}  // namespace

HamExpr operator+(const HamExpr& a, const HamExpr& b) {
  Node n;
  n.kind = Node::Kind::add;
  n.lhs = a.root_;
  n.rhs = b.root_;
  return HamExpr(std::make_shared<const Node>(std::move(n)));
}

HamExpr parse(const std::string& text, const ParseOptions& options) {
  Parser parser(Lexer(text).run(), options);
  return HamExpr(parser.run());
}

std::string render(const HamExpr& expr) {
  std::string out;
  if (!expr.empty()) render_node(expr.root(), out);
  return out;
}

bool structurally_equal(const HamExpr& a, const HamExpr& b) {
  if (a.empty() || b.empty()) return a.empty() == b.empty();
  return equal_nodes(a.root(), b.root());
}

bool uses_capital_namespace(const HamExpr& expr) {
  bool lower_seen = false, capital_seen = false;
  if (!expr.empty()) namespaces(expr.root(), lower_seen, capital_seen);
  return capital_seen;
}

namespace {

Complex evaluate_node(const Node& n, const std::map<std::string, Complex>& bindings) {
  switch (n.kind) {
    case Node::Kind::number: return {n.value, 0.0};
    case Node::Kind::imaginary: return {0.0, n.value};
    case Node::Kind::variable:
      throw ParseError(n.line, n.column, "variable '" + n.name + "' in a constant expression");
    case Node::Kind::parameter: {
      const auto it = bindings.find(n.name);
      if (it == bindings.end()) throw ParseError(n.line, n.column, "unbound parameter '" + n.name + "'");
      return it->second;
    }
    case Node::Kind::neg: return -evaluate_node(*n.lhs, bindings);
    case Node::Kind::pow: return std::pow(evaluate_node(*n.lhs, bindings), n.exponent);
    default: break;
  }
  const Complex a = evaluate_node(*n.lhs, bindings), b = evaluate_node(*n.rhs, bindings);
  switch (n.kind) {
    case Node::Kind::add: return a + b;
    case Node::Kind::sub: return a - b;
    case Node::Kind::mul: return a * b;
    default:
      if (b == Complex{}) throw ParseError(n.line, n.column, "division by zero");
      return a / b;
  }
}

}  // namespace

Complex evaluate_constant(const HamExpr& expr, const std::map<std::string, Complex>& bindings) {
  if (expr.empty()) return {};
  return evaluate_node(expr.root(), bindings);
}

PhaseSymbol lower(const HamExpr& expr, const std::map<std::string, Complex>& bindings) {
  if (expr.empty()) return PhaseSymbol(VariableOrder(2));
  if (const Node* first = first_variable(expr.root())) {
    if (const Node* clash = first_capital_conflict(expr.root(), first->capital))
      throw ParseError(clash->line, clash->column,
                       "mixed variable namespaces: '" + clash->name + "' after '" + first->name + "'");
  }
  return lower_node(expr.root(), bindings);
}

}  // namespace nhnc
