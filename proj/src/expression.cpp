#include "berwald/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <vector>

#include "berwald/types.hpp"

namespace berwald {

struct Expression::Node {
  enum class Kind { number, u1, u2, t, add, sub, mul, div, pow, neg, call };
  Kind kind = Kind::number;
  double value = 0.0;
  double (*fn)(double) = nullptr;
  std::shared_ptr<const Node> lhs, rhs;

  double eval(double u1, double u2, double t) const {
    switch (kind) {
      case Kind::number: return value;
      case Kind::u1: return u1;
      case Kind::u2: return u2;
      case Kind::t: return t;
      case Kind::add: return lhs->eval(u1, u2, t) + rhs->eval(u1, u2, t);
      case Kind::sub: return lhs->eval(u1, u2, t) - rhs->eval(u1, u2, t);
      case Kind::mul: return lhs->eval(u1, u2, t) * rhs->eval(u1, u2, t);
      case Kind::div: return lhs->eval(u1, u2, t) / rhs->eval(u1, u2, t);
      case Kind::pow: return std::pow(lhs->eval(u1, u2, t), rhs->eval(u1, u2, t));
      case Kind::neg: return -lhs->eval(u1, u2, t);
      case Kind::call: return fn(lhs->eval(u1, u2, t));
    }
    return NAN;
  }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Kind = Expression::Node::Kind;

NodePtr leaf(Kind kind, double value = 0.0) {
  auto n = std::make_shared<Expression::Node>();
  n->kind = kind;
  n->value = value;
  return n;
}

NodePtr branch(Kind kind, NodePtr lhs, NodePtr rhs = nullptr, double (*fn)(double) = nullptr) {
  auto n = std::make_shared<Expression::Node>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  n->fn = fn;
  return n;
}

struct Function {
  std::string_view name;
  double (*fn)(double);
};

const Function kFunctions[] = {
    {"sin", [](double x) { return std::sin(x); }},   {"cos", [](double x) { return std::cos(x); }},
    {"tan", [](double x) { return std::tan(x); }},   {"log", [](double x) { return std::log(x); }},
    {"exp", [](double x) { return std::exp(x); }},   {"sqrt", [](double x) { return std::sqrt(x); }},
    {"abs", [](double x) { return std::abs(x); }},
};

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  bool uses_u1 = false;
  bool uses_u2 = false;
  bool uses_t = false;

  NodePtr parse() {
    NodePtr e = expr();
    skip_space();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return e;
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("expression '" + std::string(src_) + "': " + what + " at position " + std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) lhs = branch(Kind::add, lhs, term());
      else if (accept('-')) lhs = branch(Kind::sub, lhs, term());
      else return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) lhs = branch(Kind::mul, lhs, unary());
      else if (accept('/')) lhs = branch(Kind::div, lhs, unary());
      else return lhs;
    }
  }

  NodePtr unary() {
    if (accept('-')) return branch(Kind::neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return branch(Kind::pow, base, unary());
    return base;
  }

  NodePtr primary() {
    skip_space();
    if (pos_ >= src_.size()) fail("unexpected end");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = expr();
      if (!accept(')')) fail("missing ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return name();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  NodePtr number() {
    double value = 0.0;
    const char* first = src_.data() + pos_;
    const auto [end, ec] = std::from_chars(first, src_.data() + src_.size(), value);
    if (ec != std::errc()) fail("malformed number");
    pos_ += static_cast<std::size_t>(end - first);
    return leaf(Kind::number, value);
  }

  NodePtr name() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    const std::string_view id = src_.substr(start, pos_ - start);
    if (id == "u1") {
      uses_u1 = true;
      return leaf(Kind::u1);
    }
    if (id == "u2") {
      uses_u2 = true;
      return leaf(Kind::u2);
    }
    if (id == "t") {
      uses_t = true;
      return leaf(Kind::t);
    }
    if (id == "pi") return leaf(Kind::number, std::numbers::pi);
    if (id == "e") return leaf(Kind::number, std::numbers::e);
    for (const Function& f : kFunctions)
      if (id == f.name) {
        if (!accept('(')) fail("expected '(' after " + std::string(id));
        NodePtr arg = expr();
        if (!accept(')')) fail("missing ')'");
        return branch(Kind::call, arg, nullptr, f.fn);
      }
    pos_ = start;
    fail("unknown name '" + std::string(id) + "'");
  }
};

}  // namespace

Expression Expression::parse(std::string_view source) {
  Parser parser(source);
  Expression e;
  e.root_ = parser.parse();
  e.source_ = std::string(source);
  e.uses_u1_ = parser.uses_u1;
  e.uses_u2_ = parser.uses_u2;
  e.uses_t_ = parser.uses_t;
  return e;
}

double Expression::operator()(double u1, double u2, double t) const { return root_->eval(u1, u2, t); }

double Expression::constant() const {
  if (uses_point() || uses_t_) throw ConfigError("expression '" + source_ + "' must be a constant");
  return root_->eval(0.0, 0.0, 0.0);
}

}  // namespace berwald
