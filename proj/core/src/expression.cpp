#include "hardy/expression.hpp"

#include "hardy/common.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

namespace hardy {

struct Expression::Node {
  enum class Kind { Number, Variable, Negate, Add, Sub, Mul, Div, Pow, Call };
  Kind kind = Kind::Number;
  double number = 0.0;
  std::size_t variable = 0;
  std::string function;
  std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Kind = Expression::Node::Kind;

NodePtr make(Kind kind, std::vector<NodePtr> args = {}) {
  auto node = std::make_shared<Expression::Node>();
  node->kind = kind;
  node->args = std::move(args);
  return node;
}

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& vars) : text_(text), vars_(vars) {}

  NodePtr parse() {
    NodePtr node = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return node;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("expression '" + std::string(text_) + "': " + what + " at position " +
                      std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expression() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make(Kind::Add, {lhs, term()});
      } else if (accept('-')) {
        lhs = make(Kind::Sub, {lhs, term()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make(Kind::Mul, {lhs, unary()});
      } else if (accept('/')) {
        lhs = make(Kind::Div, {lhs, unary()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Kind::Negate, {unary()});
    if (accept('+')) return unary();
    return power();
  }

  // Right associative; binds tighter than unary minus on its left operand.
  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make(Kind::Pow, {base, unary()});
    return base;
  }

  NodePtr variable_node(const std::string& name) {
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i] == name) {
        auto node = std::make_shared<Expression::Node>();
        node->kind = Kind::Variable;
        node->variable = i;
        return node;
      }
    }
    fail("unknown identifier '" + name + "'");
  }

  NodePtr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = expression();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == '|') {
      if (text_.substr(pos_, 3) != "|x|") fail("only |x| is supported between bars");
      pos_ += 3;
      return variable_node("r");
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string name(text_.substr(start, pos_ - start));
      if (accept('(')) return call(name);
      if (name == "pi") return constant(std::numbers::pi);
      if (name == "e") return constant(std::numbers::e);
      return variable_node(name);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  NodePtr constant(double value) {
    auto node = std::make_shared<Expression::Node>();
    node->kind = Kind::Number;
    node->number = value;
    return node;
  }

  NodePtr number() {
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc()) fail("malformed number");
    pos_ += static_cast<std::size_t>(ptr - first);
    return constant(value);
  }

  NodePtr call(const std::string& name) {
    static const std::vector<std::string> unary_fns = {"sqrt", "log", "exp", "sin",
                                                       "cos",  "tan", "abs"};
    std::vector<NodePtr> args;
    args.push_back(expression());
    while (accept(',')) args.push_back(expression());
    if (!accept(')')) fail("expected ')' after function arguments");
    const bool is_unary =
        std::find(unary_fns.begin(), unary_fns.end(), name) != unary_fns.end();
    if (is_unary && args.size() != 1) fail(name + " takes one argument");
    if (name == "pow") {
      if (args.size() != 2) fail("pow takes two arguments");
      return make(Kind::Pow, std::move(args));
    }
    if (!is_unary) fail("unknown function '" + name + "'");
    auto node = std::make_shared<Expression::Node>();
    node->kind = Kind::Call;
    node->function = name;
    node->args = std::move(args);
    return node;
  }

  std::string_view text_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

double eval_node(const Expression::Node& node, std::span<const double> values) {
  switch (node.kind) {
    case Kind::Number:
      return node.number;
    case Kind::Variable:
      return values[node.variable];
    case Kind::Negate:
      return -eval_node(*node.args[0], values);
    case Kind::Add:
      return eval_node(*node.args[0], values) + eval_node(*node.args[1], values);
    case Kind::Sub:
      return eval_node(*node.args[0], values) - eval_node(*node.args[1], values);
    case Kind::Mul:
      return eval_node(*node.args[0], values) * eval_node(*node.args[1], values);
    case Kind::Div:
      return eval_node(*node.args[0], values) / eval_node(*node.args[1], values);
    case Kind::Pow:
      return std::pow(eval_node(*node.args[0], values), eval_node(*node.args[1], values));
    case Kind::Call: {
      const double a = eval_node(*node.args[0], values);
      const std::string& f = node.function;
      if (f == "sqrt") return std::sqrt(a);
      if (f == "log") return std::log(a);
      if (f == "exp") return std::exp(a);
      if (f == "sin") return std::sin(a);
      if (f == "cos") return std::cos(a);
      if (f == "tan") return std::tan(a);
      return std::abs(a);
    }
  }
  return 0.0;
}

}  // namespace

Expression::Expression() = default;

Expression Expression::parse(std::string_view text, std::vector<std::string> variables) {
  Expression expr;
  expr.text_ = std::string(text);
  expr.variables_ = std::move(variables);
  expr.root_ = Parser(expr.text_, expr.variables_).parse();
  return expr;
}

double Expression::evaluate(std::span<const double> values) const {
  if (!root_) throw ConfigError("evaluating an empty expression");
  if (values.size() < variables_.size()) {
    throw ConfigError("expression '" + text_ + "' expects " + std::to_string(variables_.size()) +
                      " variable values");
  }
  return eval_node(*root_, values);
}

std::vector<std::string> spatial_variables(int n) {
  std::vector<std::string> vars;
  for (int i = 1; i <= n; ++i) vars.push_back("x" + std::to_string(i));
  vars.push_back("r");
  return vars;
}

}  // namespace hardy
