// SPDX-License-Identifier: Apache-2.0
#include "sesolv/operators.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "sesolv/errors.hpp"

namespace sesolv {

void DiscreteOperator::apply(std::span<const double> x, std::span<double> y) const
{
    const int n = size();
    for (int r = 0; r < n; ++r) {
        double s = 0.0;
        for (int p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p)
            s += val_[p] * x[col_[p]];
        y[r] = s;
    }
}

BandMatrix DiscreteOperator::band(std::span<const double> shift) const
{
    BandMatrix b;
    b.resize(size(), bandwidth_);
    for (int r = 0; r < size(); ++r) {
        for (int p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
            const int c = col_[p];
            if (c <= r) b.at(r, r - c) = val_[p];
        }
        if (!shift.empty()) b.at(r, 0) += shift[r];
    }
    return b;
}

DiscreteOperator assemble_neg_laplacian(const std::shared_ptr<const Grid>& grid)
{
    if (!grid) throw ShapeError("assemble_neg_laplacian requires a grid");
    DiscreteOperator op;
    op.grid_ = grid;
    const int n = grid->interior_count();

    // Scatter the edge list into per-row maps: S = sum_e c_e (e_a - e_b)(e_a - e_b)^T
    // restricted to interior unknowns. Edges into boundary nodes only add to
    // the diagonal.
    std::vector<std::map<int, double>> rows(n);
    for (const GridEdge& e : grid->edges()) {
        const int ua = grid->unknown_of(e.a);
        const int ub = grid->unknown_of(e.b);
        if (ua >= 0) rows[ua][ua] += e.coeff;
        if (ub >= 0) rows[ub][ub] += e.coeff;
        if (ua >= 0 && ub >= 0) {
            rows[ua][ub] -= e.coeff;
            rows[ub][ua] -= e.coeff;
        }
    }

    op.row_ptr_.assign(n + 1, 0);
    op.diag_.assign(n, 0.0);
    op.rhs_scale_.resize(n);
    for (int r = 0; r < n; ++r) {
        op.row_ptr_[r + 1] = op.row_ptr_[r] + static_cast<int>(rows[r].size());
        op.rhs_scale_[r] = grid->quad_weight(grid->interior_nodes()[r]);
    }
    op.col_.reserve(op.row_ptr_[n]);
    op.val_.reserve(op.row_ptr_[n]);
    int bw = 0;
    for (int r = 0; r < n; ++r) {
        for (const auto& [c, v] : rows[r]) {
            op.col_.push_back(c);
            op.val_.push_back(v);
            if (c == r) op.diag_[r] = v;
            bw = std::max(bw, std::abs(c - r));
        }
    }
    op.bandwidth_ = bw;
    return op;
}

std::vector<double> restrict_interior(const ScalarField& field)
{
    const Grid& g = field.grid();
    std::vector<double> v(g.interior_count());
    for (int r = 0; r < g.interior_count(); ++r)
        v[r] = field[g.interior_nodes()[r]];
    return v;
}

ScalarField extend_by_zero(const std::shared_ptr<const Grid>& grid, std::span<const double> interior)
{
    std::vector<double> v(grid->node_count(), 0.0);
    for (int r = 0; r < grid->interior_count(); ++r)
        v[grid->interior_nodes()[r]] = interior[r];
    return {grid, std::move(v)};
}

ScalarField solve_linear(const DiscreteOperator& opr, const ScalarField& rhs)
{
    if (rhs.grid_ptr() != opr.grid_ptr())
        throw ShapeError("rhs lives on a different grid than the operator");
    const int n = opr.size();
    std::vector<double> b(n);
    double bnorm = 0.0;
    for (int r = 0; r < n; ++r) {
        b[r] = opr.rhs_scale()[r] * rhs[opr.grid().interior_nodes()[r]];
        bnorm = std::max(bnorm, std::abs(b[r]));
    }

    BandCholesky factor;
    if (!factor.factorize(opr.band()))
        throw SolveError("linear solve breakdown: operator is not positive definite");
    std::vector<double> x(n);
    factor.solve(b, x);

    // Residual contract.
    std::vector<double> ax(n);
    opr.apply(x, ax);
    double resid = 0.0;
    for (int r = 0; r < n; ++r) resid = std::max(resid, std::abs(b[r] - ax[r]));
    if (resid > 1e-11 * (1.0 + bnorm))
        throw SolveError("linear solve residual " + std::to_string(resid) +
                             " exceeds contract 1e-11*(1+|rhs|)",
                         {resid});

    return extend_by_zero(opr.grid_ptr(), x);
}

} // namespace sesolv
