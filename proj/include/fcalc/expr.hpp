#pragma once

#include <functional>
#include <memory>
#include <string>

namespace fcalc {

/// Compiled arithmetic expression in the variables s (staircase coordinate,
/// with J and t accepted as aliases) and y. Supports + - * / ^ (right
/// associative), unary minus, parentheses, the constants pi and e, and the
/// functions sin cos tan exp log ln sqrt abs. Used by the CLI flags and the
/// JSON problem descriptors, where coefficient functions travel as strings.
class Expr {
  public:
    static Expr parse(const std::string& text);

    double eval(double s, double y = 0.0) const;
    const std::string& text() const { return text_; }

    /// Single-variable view (y fixed to 0).
    std::function<double(double)> as_function_of_s() const;
    /// Function of y alone (s fixed to 0).
    std::function<double(double)> as_function_of_y() const;
    std::function<double(double, double)> as_function_of_sy() const;

    struct Node;  // implementation detail, defined in expr.cpp

  private:
    Expr(std::shared_ptr<const Node> root, std::string text);
    std::shared_ptr<const Node> root_;
    std::string text_;
};

} // namespace fcalc
