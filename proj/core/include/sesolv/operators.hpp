// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <span>
#include <vector>

#include "sesolv/field.hpp"
#include "sesolv/grid.hpp"
#include "sesolv/linalg.hpp"

namespace sesolv {

/// Discrete negative Laplacian with homogeneous Dirichlet data eliminated.
///
/// The operator is stored in symmetrized form: S u = diag(rhs_scale) * (-Lap u)
/// on the interior unknowns, where rhs_scale is the quadrature weight of each
/// interior node. S is the graph Laplacian of the grid's edge list, hence
/// symmetric with positive diagonal and nonpositive off-diagonal entries, and
/// <S u, u> equals the discrete Dirichlet energy of u. On radial grids the
/// edge weights carry r^(N-1), which symmetrizes -u'' - ((N-1)/r) u'.
class DiscreteOperator {
public:
    const Grid& grid() const { return *grid_; }
    const std::shared_ptr<const Grid>& grid_ptr() const { return grid_; }
    int size() const { return static_cast<int>(rhs_scale_.size()); }

    /// y = S x on interior unknowns.
    void apply(std::span<const double> x, std::span<double> y) const;

    /// S entries in CSR form (interior unknown indexing).
    std::span<const int> row_ptr() const { return row_ptr_; }
    std::span<const int> cols() const { return col_; }
    std::span<const double> vals() const { return val_; }
    std::span<const double> rhs_scale() const { return rhs_scale_; }
    std::span<const double> diagonal() const { return diag_; }

    int bandwidth() const { return bandwidth_; }
    /// Band copy of S + diag(shift); shift may be empty for no shift.
    BandMatrix band(std::span<const double> shift = {}) const;

private:
    friend DiscreteOperator assemble_neg_laplacian(const std::shared_ptr<const Grid>&);

    std::shared_ptr<const Grid> grid_;
    std::vector<int> row_ptr_, col_;
    std::vector<double> val_;
    std::vector<double> rhs_scale_;
    std::vector<double> diag_;
    int bandwidth_ = 0;
};

DiscreteOperator assemble_neg_laplacian(const std::shared_ptr<const Grid>& grid);

/// Solves -Lap u = rhs with zero Dirichlet data (the boundary values of rhs
/// are ignored) and returns the solution extended by zero on the boundary.
/// Deterministic banded LDL^T; throws SolveError if the factorization breaks
/// down or the residual exceeds 1e-11 * (1 + |scaled rhs|_inf).
ScalarField solve_linear(const DiscreteOperator& opr, const ScalarField& rhs);

/// Gathers interior node values of a field into an unknown-indexed vector.
std::vector<double> restrict_interior(const ScalarField& field);

/// Builds a field from interior values, zero on the boundary.
ScalarField extend_by_zero(const std::shared_ptr<const Grid>& grid, std::span<const double> interior);

} // namespace sesolv
