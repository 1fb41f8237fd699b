// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "sesolv/field.hpp"

namespace sesolv {

/// Small arithmetic expression over the spatial variables: numbers, + - * /,
/// ^ (right associative), unary minus, parentheses, sin/cos/exp/log/sqrt/abs,
/// and the constant pi. Variables: x (and y in 2D) on Cartesian domains, r on
/// radial ones. No side effects, no user-defined names.
class Expression {
public:
    /// Parses the text; throws ConfigError with a description on bad input.
    static Expression parse(const std::string& text);

    double eval(double x, double y) const;

    bool uses_x() const { return used_[0]; }
    bool uses_y() const { return used_[1]; }
    bool uses_r() const { return used_[2]; }

    const std::string& text() const { return text_; }

    /// Sampling function for a grid of the given domain. Throws ConfigError
    /// when the expression uses variables the domain does not provide
    /// (y on 1D grids, r on Cartesian grids, x/y on radial grids).
    SourceFn bind(const Domain& domain) const;

private:
    enum class Op : unsigned char {
        Number, VarX, VarY, VarR, Add, Sub, Mul, Div, Pow, Neg,
        Sin, Cos, Exp, Log, Sqrt, Abs
    };
    struct Node {
        Op op;
        double value = 0.0;
        int lhs = -1;
        int rhs = -1;
    };

    double eval_node(int idx, double x, double y, double r) const;

    std::string text_;
    std::vector<Node> nodes_;
    int root_ = -1;
    bool used_[3] = {false, false, false};

    friend class ExpressionParser;
};

} // namespace sesolv
