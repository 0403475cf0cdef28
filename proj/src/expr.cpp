#include "graphpq/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <vector>

namespace graphpq {

struct Expr::Node {
    enum class Kind { number, var_s, var_t, add, sub, mul, div, pow, neg,
                      abs, ln, exp, sign };
    Kind kind;
    double value = 0.0;
    std::shared_ptr<const Node> a, b;
};

namespace {

using Node = Expr::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Kind k, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

NodePtr make_number(double v) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::number;
    n->value = v;
    return n;
}

class Parser {
public:
    explicit Parser(const std::string& src) : src_(src) {}

    NodePtr run() {
        NodePtr e = parse_expr();
        skip_ws();
        if (pos_ != src_.size()) fail("trailing input", "operator or end");
        return e;
    }

private:
    const std::string& src_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what, const std::string& expected) {
        throw expr_parse_error("expression parse error at position " +
                                   std::to_string(pos_) + ": " + what +
                                   " (expected " + expected + ")",
                               pos_, expected);
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    // expr := term (('+'|'-') term)*
    NodePtr parse_expr() {
        NodePtr e = parse_term();
        for (;;) {
            if (accept('+')) e = make(Node::Kind::add, e, parse_term());
            else if (accept('-')) e = make(Node::Kind::sub, e, parse_term());
            else return e;
        }
    }

    // term := unary (('*'|'/') unary)*
    NodePtr parse_term() {
        NodePtr e = parse_unary();
        for (;;) {
            if (accept('*')) e = make(Node::Kind::mul, e, parse_unary());
            else if (accept('/')) e = make(Node::Kind::div, e, parse_unary());
            else return e;
        }
    }

    // unary := ('+'|'-') unary | power
    NodePtr parse_unary() {
        if (accept('-')) return make(Node::Kind::neg, parse_unary());
        if (accept('+')) return parse_unary();
        return parse_power();
    }

    // power := atom ('^' unary)?   right-associative
    NodePtr parse_power() {
        NodePtr base = parse_atom();
        if (accept('^')) return make(Node::Kind::pow, base, parse_unary());
        return base;
    }

    NodePtr parse_atom() {
        skip_ws();
        if (pos_ >= src_.size())
            fail("unexpected end of input", "number, 's', 't', function or '('");
        char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr e = parse_expr();
            if (!accept(')')) fail("unbalanced parenthesis", "')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_word();
        fail(std::string("unexpected character '") + c + "'",
             "number, 's', 't', function or '('");
    }

    NodePtr parse_number() {
        double v = 0.0;
        auto res = std::from_chars(src_.data() + pos_, src_.data() + src_.size(), v);
        if (res.ec != std::errc()) fail("bad number", "numeric literal");
        pos_ = static_cast<std::size_t>(res.ptr - src_.data());
        return make_number(v);
    }

    NodePtr parse_word() {
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               std::isalpha(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
        std::string w = src_.substr(start, pos_ - start);
        if (w == "s") return make(Node::Kind::var_s);
        if (w == "t") return make(Node::Kind::var_t);
        Node::Kind k;
        if (w == "abs") k = Node::Kind::abs;
        else if (w == "ln") k = Node::Kind::ln;
        else if (w == "exp") k = Node::Kind::exp;
        else if (w == "sign") k = Node::Kind::sign;
        else {
            pos_ = start;
            fail("unknown name \"" + w + "\"", "'s', 't', abs, ln, exp or sign");
        }
        if (!accept('(')) fail("function call needs '('", "'('");
        NodePtr arg = parse_expr();
        if (!accept(')')) fail("unbalanced parenthesis", "')'");
        return make(k, arg);
    }
};

double eval_node(const Node& n, double s, double t) {
    switch (n.kind) {
    case Node::Kind::number: return n.value;
    case Node::Kind::var_s: return s;
    case Node::Kind::var_t: return t;
    case Node::Kind::add: return eval_node(*n.a, s, t) + eval_node(*n.b, s, t);
    case Node::Kind::sub: return eval_node(*n.a, s, t) - eval_node(*n.b, s, t);
    case Node::Kind::mul: return eval_node(*n.a, s, t) * eval_node(*n.b, s, t);
    case Node::Kind::div: return eval_node(*n.a, s, t) / eval_node(*n.b, s, t);
    case Node::Kind::pow:
        return std::pow(eval_node(*n.a, s, t), eval_node(*n.b, s, t));
    case Node::Kind::neg: return -eval_node(*n.a, s, t);
    case Node::Kind::abs: return std::fabs(eval_node(*n.a, s, t));
    case Node::Kind::ln: return std::log(eval_node(*n.a, s, t));
    case Node::Kind::exp: return std::exp(eval_node(*n.a, s, t));
    case Node::Kind::sign: {
        double v = eval_node(*n.a, s, t);
        return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
    }
    }
    return 0.0;
}

} // namespace

Expr Expr::parse(const std::string& source) {
    Expr e;
    e.source_ = source;
    Parser p(source);
    e.root_ = p.run();
    return e;
}

double Expr::eval(double s, double t) const {
    return eval_node(*root_, s, t);
}

} // namespace graphpq
