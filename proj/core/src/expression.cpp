#include "ndsl/expression.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "ndsl/errors.hpp"

namespace ndsl {

struct Expression::Node {
  Kind kind = Kind::Number;
  double value = 0.0;
  Function function = Function::Sin;
  std::array<std::shared_ptr<const Node>, 2> child{};
  bool constant = true;  // no `x` anywhere below
  bool folded_ok = false;
  double folded = 0.0;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Kind = Expression::Kind;
using Function = Expression::Function;

double apply(Function f, double a) {
  switch (f) {
    case Function::Sin: return std::sin(a);
    case Function::Cos: return std::cos(a);
    case Function::Exp: return std::exp(a);
    case Function::Sqrt:
      if (a < 0.0) throw DomainError("sqrt of negative value");
      return std::sqrt(a);
    case Function::Abs: return std::abs(a);
  }
  return 0.0;
}

double eval(const Expression::Node& n, double x) {
  switch (n.kind) {
    case Kind::Number: return n.value;
    case Kind::Pi: return std::numbers::pi;
    case Kind::Variable: return x;
    case Kind::Negate: return -eval(*n.child[0], x);
    case Kind::Add: return eval(*n.child[0], x) + eval(*n.child[1], x);
    case Kind::Subtract: return eval(*n.child[0], x) - eval(*n.child[1], x);
    case Kind::Multiply: return eval(*n.child[0], x) * eval(*n.child[1], x);
    case Kind::Divide: {
      const double d = eval(*n.child[1], x);
      if (d == 0.0) throw DomainError("division by zero");
      return eval(*n.child[0], x) / d;
    }
    case Kind::Power: {
      const double base = eval(*n.child[0], x);
      const double ex = eval(*n.child[1], x);
      const double v = std::pow(base, ex);
      if (std::isnan(v)) throw DomainError("power of negative base with fractional exponent");
      return v;
    }
    case Kind::Function: return apply(n.function, eval(*n.child[0], x));
  }
  return 0.0;
}

double checked(double v) {
  if (!std::isfinite(v)) throw DomainError("non-finite value");
  return v;
}

NodePtr make(Kind kind, NodePtr a = nullptr, NodePtr b = nullptr, double value = 0.0,
             Function f = Function::Sin) {
  auto n = std::make_shared<Expression::Node>();
  n->kind = kind;
  n->value = value;
  n->function = f;
  n->child = {std::move(a), std::move(b)};
  n->constant = kind != Kind::Variable;
  for (const auto& c : n->child)
    if (c && !c->constant) n->constant = false;
  if (n->constant) {
    // "sqrt(-1)" stays constant but unfolded; evaluating it reports the domain error.
    try {
      n->folded = checked(eval(*n, 0.0));
      n->folded_ok = true;
    } catch (const DomainError&) {
    }
  }
  return n;
}

bool same(const Expression::Node* a, const Expression::Node* b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  if (a->kind == Kind::Number && a->value != b->value) return false;
  if (a->kind == Kind::Function && a->function != b->function) return false;
  return same(a->child[0].get(), b->child[0].get()) && same(a->child[1].get(), b->child[1].get());
}

const char* function_name(Function f) {
  switch (f) {
    case Function::Sin: return "sin";
    case Function::Cos: return "cos";
    case Function::Exp: return "exp";
    case Function::Sqrt: return "sqrt";
    case Function::Abs: return "abs";
  }
  return "?";
}

void print(const Expression::Node& n, std::string& out) {
  auto binary = [&](char op) {
    out += '(';
    print(*n.child[0], out);
    out += op;
    print(*n.child[1], out);
    out += ')';
  };
  switch (n.kind) {
    case Kind::Number: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", n.value);
      out += buf;
      return;
    }
    case Kind::Pi: out += "pi"; return;
    case Kind::Variable: out += 'x'; return;
    case Kind::Negate:
      out += "(-";
      print(*n.child[0], out);
      out += ')';
      return;
    case Kind::Add: binary('+'); return;
    case Kind::Subtract: binary('-'); return;
    case Kind::Multiply: binary('*'); return;
    case Kind::Divide: binary('/'); return;
    case Kind::Power: binary('^'); return;
    case Kind::Function:
      out += function_name(n.function);
      out += '(';
      print(*n.child[0], out);
      out += ')';
      return;
  }
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("empty expression", pos_);
    NodePtr e = expr();
    skip_space();
    if (pos_ < text_.size()) throw ParseError("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_);
    return e;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r'))
      ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) lhs = make(Kind::Add, lhs, term());
      else if (accept('-')) lhs = make(Kind::Subtract, lhs, term());
      else return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) lhs = make(Kind::Multiply, lhs, unary());
      else if (accept('/')) lhs = make(Kind::Divide, lhs, unary());
      else return lhs;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Kind::Negate, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make(Kind::Power, base, unary());
    return base;
  }

  NodePtr primary() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return e;
    }
    if ((c >= '0' && c <= '9') || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
  }

  NodePtr number() {
    const std::size_t start = pos_;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
    if (ec != std::errc() || !std::isfinite(v)) throw ParseError("malformed number", start);
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return make(Kind::Number, nullptr, nullptr, v);
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "x") return make(Kind::Variable);
    if (name == "pi") return make(Kind::Pi);
    Function f;
    if (name == "sin") f = Function::Sin;
    else if (name == "cos") f = Function::Cos;
    else if (name == "exp") f = Function::Exp;
    else if (name == "sqrt") f = Function::Sqrt;
    else if (name == "abs") f = Function::Abs;
    else throw ParseError("unknown identifier '" + std::string(name) + "'", start);
    if (!accept('(')) throw ParseError("expected '(' after " + std::string(name), pos_);
    NodePtr arg = expr();
    if (!accept(')')) throw ParseError("expected ')'", pos_);
    return make(Kind::Function, arg, nullptr, 0.0, f);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression::Expression(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

Expression Expression::parse(std::string_view text) { return Expression(Parser(text).parse()); }

Expression Expression::number(double value) {
  if (!std::isfinite(value)) throw DomainError("non-finite literal");
  return Expression(make(Kind::Number, nullptr, nullptr, value));
}

Expression Expression::variable() { return Expression(make(Kind::Variable)); }

double Expression::operator()(double x) const {
  if (root_->folded_ok) return root_->folded;
  return checked(eval(*root_, x));
}

bool Expression::is_constant() const noexcept { return root_->constant; }

std::optional<double> Expression::constant_value() const noexcept {
  if (root_->folded_ok) return root_->folded;
  return std::nullopt;
}

std::string Expression::to_string() const {
  std::string out;
  print(*root_, out);
  return out;
}

Expression::Kind Expression::kind() const noexcept { return root_->kind; }

Expression operator+(const Expression& a, const Expression& b) { return Expression(make(Kind::Add, a.root_, b.root_)); }
Expression operator-(const Expression& a, const Expression& b) { return Expression(make(Kind::Subtract, a.root_, b.root_)); }
Expression operator*(const Expression& a, const Expression& b) { return Expression(make(Kind::Multiply, a.root_, b.root_)); }
Expression operator/(const Expression& a, const Expression& b) { return Expression(make(Kind::Divide, a.root_, b.root_)); }
Expression Expression::operator-() const { return Expression(make(Kind::Negate, root_)); }

bool operator==(const Expression& a, const Expression& b) { return same(a.root_.get(), b.root_.get()); }

}  // namespace ndsl
