// SPDX-License-Identifier: Apache-2.0
#include "sesolv/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "sesolv/errors.hpp"

namespace sesolv {

class ExpressionParser {
public:
    ExpressionParser(const std::string& text, Expression& out) : text_(text), out_(out) {}

    void run()
    {
        out_.text_ = text_;
        out_.root_ = parse_sum();
        skip_ws();
        if (pos_ != text_.size())
            fail("unexpected trailing input '" + text_.substr(pos_) + "'");
        if (out_.nodes_.empty())
            fail("empty expression");
    }

private:
    [[noreturn]] void fail(const std::string& message) const
    {
        throw ConfigError("expression error at offset " + std::to_string(pos_) + ": " + message);
    }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool consume(char c)
    {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek()
    {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    int add(Expression::Node node)
    {
        out_.nodes_.push_back(node);
        return static_cast<int>(out_.nodes_.size()) - 1;
    }

    int parse_sum()
    {
        int lhs = parse_product();
        while (true) {
            if (consume('+'))
                lhs = add({Expression::Op::Add, 0.0, lhs, parse_product()});
            else if (consume('-'))
                lhs = add({Expression::Op::Sub, 0.0, lhs, parse_product()});
            else
                return lhs;
        }
    }

    int parse_product()
    {
        int lhs = parse_unary();
        while (true) {
            if (consume('*'))
                lhs = add({Expression::Op::Mul, 0.0, lhs, parse_unary()});
            else if (consume('/'))
                lhs = add({Expression::Op::Div, 0.0, lhs, parse_unary()});
            else
                return lhs;
        }
    }

    int parse_unary()
    {
        if (consume('-'))
            return add({Expression::Op::Neg, 0.0, parse_unary(), -1});
        if (consume('+'))
            return parse_unary();
        return parse_power();
    }

    int parse_power()
    {
        int base = parse_primary();
        if (consume('^')) // right associative; exponent may carry a sign
            return add({Expression::Op::Pow, 0.0, base, parse_unary()});
        return base;
    }

    int parse_primary()
    {
        skip_ws();
        if (pos_ >= text_.size()) fail("expected a value");
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = text_.c_str() + pos_;
            char* end = nullptr;
            const double value = std::strtod(begin, &end);
            if (end == begin) fail("malformed number");
            pos_ += static_cast<std::size_t>(end - begin);
            return add({Expression::Op::Number, value, -1, -1});
        }
        if (c == '(') {
            ++pos_;
            const int inner = parse_sum();
            if (!consume(')')) fail("missing ')'");
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c)))
            return parse_name();
        fail(std::string("unexpected character '") + c + "'");
    }

    int parse_name()
    {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        const std::string name = text_.substr(start, pos_ - start);

        if (name == "x") {
            out_.used_[0] = true;
            return add({Expression::Op::VarX, 0.0, -1, -1});
        }
        if (name == "y") {
            out_.used_[1] = true;
            return add({Expression::Op::VarY, 0.0, -1, -1});
        }
        if (name == "r") {
            out_.used_[2] = true;
            return add({Expression::Op::VarR, 0.0, -1, -1});
        }
        if (name == "pi")
            return add({Expression::Op::Number, std::numbers::pi, -1, -1});

        Expression::Op fn;
        if (name == "sin") fn = Expression::Op::Sin;
        else if (name == "cos") fn = Expression::Op::Cos;
        else if (name == "exp") fn = Expression::Op::Exp;
        else if (name == "log") fn = Expression::Op::Log;
        else if (name == "sqrt") fn = Expression::Op::Sqrt;
        else if (name == "abs") fn = Expression::Op::Abs;
        else fail("unknown name '" + name + "'");

        if (!consume('(')) fail("function '" + name + "' needs an argument list");
        const int arg = parse_sum();
        if (!consume(')')) fail("missing ')' after argument of '" + name + "'");
        return add({fn, 0.0, arg, -1});
    }

    const std::string& text_;
    Expression& out_;
    std::size_t pos_ = 0;
};

Expression Expression::parse(const std::string& text)
{
    Expression e;
    ExpressionParser(text, e).run();
    return e;
}

double Expression::eval_node(int idx, double x, double y, double r) const
{
    const Node& n = nodes_[idx];
    switch (n.op) {
        case Op::Number: return n.value;
        case Op::VarX: return x;
        case Op::VarY: return y;
        case Op::VarR: return r;
        case Op::Add: return eval_node(n.lhs, x, y, r) + eval_node(n.rhs, x, y, r);
        case Op::Sub: return eval_node(n.lhs, x, y, r) - eval_node(n.rhs, x, y, r);
        case Op::Mul: return eval_node(n.lhs, x, y, r) * eval_node(n.rhs, x, y, r);
        case Op::Div: return eval_node(n.lhs, x, y, r) / eval_node(n.rhs, x, y, r);
        case Op::Pow: return std::pow(eval_node(n.lhs, x, y, r), eval_node(n.rhs, x, y, r));
        case Op::Neg: return -eval_node(n.lhs, x, y, r);
        case Op::Sin: return std::sin(eval_node(n.lhs, x, y, r));
        case Op::Cos: return std::cos(eval_node(n.lhs, x, y, r));
        case Op::Exp: return std::exp(eval_node(n.lhs, x, y, r));
        case Op::Log: return std::log(eval_node(n.lhs, x, y, r));
        case Op::Sqrt: return std::sqrt(eval_node(n.lhs, x, y, r));
        case Op::Abs: return std::abs(eval_node(n.lhs, x, y, r));
    }
    return 0.0;
}

double Expression::eval(double x, double y) const
{
    return eval_node(root_, x, y, x);
}

SourceFn Expression::bind(const Domain& domain) const
{
    const bool radial = is_radial(domain);
    const int axes = axis_count(domain);
    if (radial && (uses_x() || uses_y()))
        throw ConfigError("expression '" + text_ + "' uses x/y on a radial domain (use r)");
    if (!radial && uses_r())
        throw ConfigError("expression '" + text_ + "' uses r on a Cartesian domain");
    if (axes == 1 && uses_y())
        throw ConfigError("expression '" + text_ + "' uses y on a 1D domain");

    // Take a copy so the bound function owns the AST.
    Expression self = *this;
    return [self](const Point& pt) { return self.eval_node(self.root_, pt.x, pt.y, pt.x); };
}

} // namespace sesolv
