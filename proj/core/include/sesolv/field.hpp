// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "sesolv/grid.hpp"

namespace sesolv {

/// Nodal values of a function on a Grid. Value semantics; the grid is shared
/// and immutable.
class ScalarField {
public:
    ScalarField() = default;
    explicit ScalarField(std::shared_ptr<const Grid> grid, double fill = 0.0);
    /// Takes ownership of the values; throws ShapeError on a size mismatch
    /// and DataError if any value is non-finite.
    ScalarField(std::shared_ptr<const Grid> grid, std::vector<double> values);

    const Grid& grid() const { return *grid_; }
    const std::shared_ptr<const Grid>& grid_ptr() const { return grid_; }

    int size() const { return static_cast<int>(values_.size()); }
    double operator[](int i) const { return values_[i]; }
    double& operator[](int i) { return values_[i]; }
    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }

    bool empty() const { return values_.empty(); }

private:
    std::shared_ptr<const Grid> grid_;
    std::vector<double> values_;
};

using SourceFn = std::function<double(const Point&)>;

/// Evaluates fn at every node. Throws DataError on non-finite values.
ScalarField sample(const std::shared_ptr<const Grid>& grid, const SourceFn& fn);

/// Like sample(), but for source data f: values below -1e-12*(1+sup|f|) are
/// rejected (DataError) and tiny negative round-off is clamped to zero.
ScalarField sample_source(const std::shared_ptr<const Grid>& grid, const SourceFn& fn);

/// Wraps pre-gridded values with the source nonnegativity contract.
ScalarField source_from_values(const std::shared_ptr<const Grid>& grid, std::vector<double> values);

/// Pointwise q-th power of a nonnegative field (q > 0). A negative entry
/// throws DataError.
ScalarField power_field(const ScalarField& field, double q);

/// Mirrors nodal values across the midplane orthogonal to the axis. Grids of
/// radial domains have no reflection axis (ShapeError), as is a Y-axis
/// request on a 1D grid.
ScalarField reflect(const ScalarField& field, Axis axis);

/// Trapezoidal approximation of the Dirichlet energy integral |grad field|^2
/// over the sub-domain at distance >= margin from the boundary (margin 0 =
/// full domain). For a zero-boundary field with margin 0 this is exactly
/// <S u, u> with S the assembled stiffness operator. margin must be smaller
/// than half the domain width.
double h1_seminorm_sq(const ScalarField& field, double margin = 0.0);

/// Quadrature of the field over the full domain (weights * values).
double integrate(const ScalarField& field);

double sup_norm(const ScalarField& field);
double sup_diff(const ScalarField& a, const ScalarField& b);

/// max(field - shift, 0) nodally.
ScalarField shifted_positive_part(const ScalarField& field, double shift);

/// Throws ShapeError unless both fields live on the same grid object.
void require_same_grid(const ScalarField& a, const ScalarField& b);

/// Copy of the field with round-off boundary values (|v| <= 1e-12*(1+sup))
/// snapped to zero; larger boundary values throw InvalidArgumentError with
/// the given context. Sampled analytic functions rarely vanish exactly at
/// the endpoints, so zero-trace preconditions go through this.
ScalarField with_zero_boundary(const ScalarField& field, const char* what);

} // namespace sesolv
