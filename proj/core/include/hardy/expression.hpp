#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hardy {

/// Restricted arithmetic expression over a fixed list of named variables.
///
/// Grammar: numbers, variables, `+ - * / ^`, unary minus, parentheses, and the
/// functions sqrt, log, exp, sin, cos, tan, abs, pow(a, b). The token `|x|` is an
/// alias for the variable `r` when `r` is declared. Constants `pi` and `e`.
class Expression {
 public:
  Expression();

  /// Throws ConfigError with the offending position on malformed input or an
  /// unknown identifier.
  static Expression parse(std::string_view text, std::vector<std::string> variables);

  /// `values` is indexed like the variable list given to parse().
  double evaluate(std::span<const double> values) const;

  const std::string& text() const { return text_; }
  const std::vector<std::string>& variables() const { return variables_; }

  struct Node;

 private:
  std::string text_;
  std::vector<std::string> variables_;
  std::shared_ptr<const Node> root_;
};

/// Variable list for expressions over a point of R^n: x1..xn, r.
std::vector<std::string> spatial_variables(int n);

}  // namespace hardy
