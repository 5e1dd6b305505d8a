#pragma once

#include <Eigen/Core>

#include <memory>
#include <string>
#include <string_view>

namespace nullgeo::expr {

struct Node;

/// Parsed arithmetic expression over the chart coordinates x1, x2, x3.
///
/// Grammar (whitespace ignored):
///   sum     := product (('+' | '-') product)*
///   product := unary (('*' | '/') unary)*
///   unary   := ('-' | '+') unary | power
///   power   := primary ('^' unary)?            right-associative
///   primary := number | name | name '(' sum ')' | '(' sum ')'
/// Names: x1 x2 x3 pi e; functions: sin cos tan exp log sqrt abs.
class Expression {
public:
    /// Throws ParseError with the offending column on malformed input.
    static Expression parse(std::string_view text);

    double operator()(const Eigen::Vector3d& x) const;

    /// Fully parenthesized text that parses back to the same tree; numeric
    /// literals carry 17 significant digits so they round-trip bit-exactly.
    std::string to_string() const;

    /// True when the value cannot depend on coordinate i (0-based).
    bool independent_of(int i) const;

private:
    explicit Expression(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
    std::shared_ptr<const Node> root_;
};

} // namespace nullgeo::expr
