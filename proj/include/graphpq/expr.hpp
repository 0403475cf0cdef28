#pragma once

#include <memory>
#include <string>

#include "graphpq/errors.hpp"

namespace graphpq {

// Raised on malformed expression text; carries the byte offset of the
// failure and the set of tokens that would have been accepted there.
struct expr_parse_error : config_error {
    expr_parse_error(const std::string& msg, std::size_t pos,
                     const std::string& expected_tokens)
        : config_error(msg), position(pos), expected(expected_tokens) {}
    std::size_t position;
    std::string expected;
};

// Arithmetic in the two scalars s and t: numbers, + - * / ^, abs, ln,
// exp, sign, parentheses. '^' is right-associative and binds tighter
// than unary minus. Used for user-defined nonlinearities; derivative
// expressions are supplied separately, never derived symbolically.
class Expr {
public:
    static Expr parse(const std::string& source);

    double eval(double s, double t) const;
    const std::string& source() const { return source_; }

    struct Node;

private:
    Expr() = default;
    std::shared_ptr<const Node> root_;
    std::string source_;
};

} // namespace graphpq
