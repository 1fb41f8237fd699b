// SPDX-License-Identifier: Apache-2.0
#include "sesolv/field.hpp"

#include <algorithm>
#include <cmath>

#include "sesolv/errors.hpp"

namespace sesolv {

namespace {

void require_grid(const std::shared_ptr<const Grid>& grid)
{
    if (!grid) throw ShapeError("field requires a grid");
}

} // namespace

ScalarField::ScalarField(std::shared_ptr<const Grid> grid, double fill)
    : grid_(std::move(grid))
{
    require_grid(grid_);
    values_.assign(grid_->node_count(), fill);
}

ScalarField::ScalarField(std::shared_ptr<const Grid> grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values))
{
    require_grid(grid_);
    if (static_cast<int>(values_.size()) != grid_->node_count())
        throw ShapeError("field has " + std::to_string(values_.size()) + " values for " +
                         std::to_string(grid_->node_count()) + " nodes");
    for (double v : values_)
        if (!std::isfinite(v)) throw DataError("field contains a non-finite value");
}

ScalarField sample(const std::shared_ptr<const Grid>& grid, const SourceFn& fn)
{
    require_grid(grid);
    std::vector<double> v(grid->node_count());
    for (int i = 0; i < grid->node_count(); ++i) {
        v[i] = fn(grid->node(i));
        if (!std::isfinite(v[i]))
            throw DataError("expression is not finite at node " + std::to_string(i));
    }
    return {grid, std::move(v)};
}

ScalarField source_from_values(const std::shared_ptr<const Grid>& grid, std::vector<double> values)
{
    ScalarField f(grid, std::move(values));
    double sup = 0.0;
    for (double v : f.values()) sup = std::max(sup, std::abs(v));
    const double tol = 1e-12 * (1.0 + sup);
    for (int i = 0; i < f.size(); ++i) {
        if (f[i] < -tol)
            throw DataError("source must be nonnegative; value " + std::to_string(f[i]) +
                            " at node " + std::to_string(i));
        if (f[i] < 0.0) f[i] = 0.0;
    }
    return f;
}

ScalarField sample_source(const std::shared_ptr<const Grid>& grid, const SourceFn& fn)
{
    ScalarField raw = sample(grid, fn);
    std::vector<double> v(raw.values().begin(), raw.values().end());
    return source_from_values(grid, std::move(v));
}

ScalarField power_field(const ScalarField& field, double q)
{
    if (!(q > 0.0)) throw InvalidArgumentError("power_field exponent must be positive");
    std::vector<double> v(field.size());
    for (int i = 0; i < field.size(); ++i) {
        if (field[i] < 0.0)
            throw DataError("power_field requires a nonnegative field");
        v[i] = std::pow(field[i], q);
    }
    return {field.grid_ptr(), std::move(v)};
}

ScalarField reflect(const ScalarField& field, Axis axis)
{
    const Grid& g = field.grid();
    if (!g.reflectable(axis))
        throw ShapeError("grid over " + describe(g.domain()) + " has no such reflection axis");
    std::vector<double> v(field.size());
    for (int i = 0; i < field.size(); ++i)
        v[i] = field[g.mirror_node(i, axis)];
    return {field.grid_ptr(), std::move(v)};
}

double h1_seminorm_sq(const ScalarField& field, double margin)
{
    const Grid& g = field.grid();
    if (margin < 0.0 || margin >= 0.5 * width(g.domain()))
        throw InvalidArgumentError("margin must lie in [0, width/2)");
    // Tiny slack so that exactly-representable margins keep their tie nodes.
    const double cut = margin - 1e-13 * width(g.domain());
    double energy = 0.0;
    for (const GridEdge& e : g.edges()) {
        if (g.boundary_distance(e.a) < cut || g.boundary_distance(e.b) < cut) continue;
        const double d = field[e.a] - field[e.b];
        energy += e.coeff * d * d;
    }
    return energy;
}

double integrate(const ScalarField& field)
{
    double s = 0.0;
    for (int i = 0; i < field.size(); ++i)
        s += field.grid().quad_weight(i) * field[i];
    return s;
}

double sup_norm(const ScalarField& field)
{
    double s = 0.0;
    for (double v : field.values()) s = std::max(s, std::abs(v));
    return s;
}

double sup_diff(const ScalarField& a, const ScalarField& b)
{
    require_same_grid(a, b);
    double s = 0.0;
    for (int i = 0; i < a.size(); ++i) s = std::max(s, std::abs(a[i] - b[i]));
    return s;
}

ScalarField shifted_positive_part(const ScalarField& field, double shift)
{
    std::vector<double> v(field.size());
    for (int i = 0; i < field.size(); ++i)
        v[i] = std::max(field[i] - shift, 0.0);
    return {field.grid_ptr(), std::move(v)};
}

void require_same_grid(const ScalarField& a, const ScalarField& b)
{
    if (a.grid_ptr() != b.grid_ptr())
        throw ShapeError("fields live on different grids");
}

ScalarField with_zero_boundary(const ScalarField& field, const char* what)
{
    const double tol = 1e-12 * (1.0 + sup_norm(field));
    ScalarField out = field;
    for (int i = 0; i < out.size(); ++i) {
        if (!out.grid().is_boundary(i)) continue;
        if (std::abs(out[i]) > tol)
            throw InvalidArgumentError(std::string(what) + " must vanish on the boundary (value " +
                                       std::to_string(out[i]) + ")");
        out[i] = 0.0;
    }
    return out;
}

} // namespace sesolv
