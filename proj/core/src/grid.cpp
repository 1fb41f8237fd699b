// SPDX-License-Identifier: Apache-2.0
#include "sesolv/grid.hpp"

#include <algorithm>
#include <cmath>

#include "sesolv/errors.hpp"

namespace sesolv {

namespace {

// Integral of r^(N-1) over [lo, hi], times the unit sphere area: the measure
// of the spherical shell with those radii.
double shell_measure(int dim, double lo, double hi)
{
    return unit_sphere_area(dim) * (std::pow(hi, dim) - std::pow(lo, dim)) / dim;
}

void build_1d_axis(double a, double b, int m, std::vector<double>& coords, double& h)
{
    h = (b - a) / (m - 1);
    coords.resize(m);
    for (int i = 0; i < m; ++i)
        coords[i] = a + i * h;
    coords[m - 1] = b; // exact endpoint
}

} // namespace

bool Grid::reflectable(Axis axis) const
{
    if (radial_) return false;
    return axis == Axis::X || axes_ == 2;
}

int Grid::mirror_node(int idx, Axis axis) const
{
    if (axes_ == 1) return m_ - 1 - idx;
    const int i = idx % m_;
    const int j = idx / m_;
    return axis == Axis::X ? j * m_ + (m_ - 1 - i) : (m_ - 1 - j) * m_ + i;
}

std::shared_ptr<const Grid> build_grid(const Domain& domain, int m)
{
    validate(domain);
    if (m < 3)
        throw InvalidArgumentError("grid resolution must be at least 3 nodes per axis, got " +
                                   std::to_string(m));

    auto grid = std::make_shared<Grid>();
    grid->domain_ = domain;
    grid->m_ = m;
    grid->axes_ = axis_count(domain);
    grid->radial_ = is_radial(domain);

    if (const auto* iv = std::get_if<Interval>(&domain)) {
        std::vector<double> x;
        build_1d_axis(iv->a, iv->b, m, x, grid->hx_);
        const double h = grid->hx_;
        grid->points_.resize(m);
        grid->boundary_mask_.assign(m, 0);
        grid->weight_.assign(m, h);
        grid->bdist_.resize(m);
        for (int i = 0; i < m; ++i) {
            grid->points_[i] = {x[i], 0.0};
            grid->bdist_[i] = std::min(x[i] - iv->a, iv->b - x[i]);
        }
        grid->boundary_mask_[0] = grid->boundary_mask_[m - 1] = 1;
        grid->weight_[0] = grid->weight_[m - 1] = 0.5 * h;
        for (int i = 0; i + 1 < m; ++i)
            grid->edges_.push_back({i, i + 1, 1.0 / h});
    } else if (const auto* rc = std::get_if<Rectangle>(&domain)) {
        std::vector<double> x, y;
        build_1d_axis(rc->ax, rc->bx, m, x, grid->hx_);
        build_1d_axis(rc->ay, rc->by, m, y, grid->hy_);
        const double hx = grid->hx_, hy = grid->hy_;
        const int n = m * m;
        grid->points_.resize(n);
        grid->boundary_mask_.assign(n, 0);
        grid->weight_.resize(n);
        grid->bdist_.resize(n);
        auto wa = [m](int i, double h) { return (i == 0 || i == m - 1) ? 0.5 * h : h; };
        for (int j = 0; j < m; ++j) {
            for (int i = 0; i < m; ++i) {
                const int idx = j * m + i;
                grid->points_[idx] = {x[i], y[j]};
                grid->boundary_mask_[idx] = (i == 0 || i == m - 1 || j == 0 || j == m - 1) ? 1 : 0;
                grid->weight_[idx] = wa(i, hx) * wa(j, hy);
                grid->bdist_[idx] = std::min(std::min(x[i] - rc->ax, rc->bx - x[i]),
                                             std::min(y[j] - rc->ay, rc->by - y[j]));
            }
        }
        // x-directed edges, transverse trapezoid weight; then y-directed.
        for (int j = 0; j < m; ++j)
            for (int i = 0; i + 1 < m; ++i)
                grid->edges_.push_back({j * m + i, j * m + i + 1, wa(j, hy) / hx});
        for (int j = 0; j + 1 < m; ++j)
            for (int i = 0; i < m; ++i)
                grid->edges_.push_back({j * m + i, (j + 1) * m + i, wa(i, hx) / hy});
    } else {
        // Radial section [r_lo, r_hi]; r_lo = 0 for a ball (origin interior).
        int dim = 0;
        double r_lo = 0.0, r_hi = 0.0;
        bool ball = false;
        if (const auto* bl = std::get_if<RadialBall>(&domain)) {
            dim = bl->dim;
            r_hi = bl->radius;
            ball = true;
        } else {
            const auto& an = std::get<RadialAnnulus>(domain);
            dim = an.dim;
            r_lo = an.r0;
            r_hi = an.r1;
        }
        std::vector<double> r;
        build_1d_axis(r_lo, r_hi, m, r, grid->hx_);
        const double h = grid->hx_;
        grid->points_.resize(m);
        grid->boundary_mask_.assign(m, 0);
        grid->weight_.resize(m);
        grid->bdist_.resize(m);
        for (int i = 0; i < m; ++i) {
            grid->points_[i] = {r[i], 0.0};
            const double lo = std::max(r_lo, r[i] - 0.5 * h);
            const double hi = std::min(r_hi, r[i] + 0.5 * h);
            grid->weight_[i] = shell_measure(dim, lo, hi);
            grid->bdist_[i] = ball ? r_hi - r[i] : std::min(r[i] - r_lo, r_hi - r[i]);
        }
        grid->boundary_mask_[m - 1] = 1;
        if (!ball) grid->boundary_mask_[0] = 1;
        const double area = unit_sphere_area(dim);
        for (int i = 0; i + 1 < m; ++i) {
            const double r_mid = r[i] + 0.5 * h;
            grid->edges_.push_back({i, i + 1, area * std::pow(r_mid, dim - 1) / h});
        }
    }

    const int n = grid->node_count();
    grid->unknown_.assign(n, -1);
    for (int idx = 0; idx < n; ++idx) {
        if (!grid->boundary_mask_[idx]) {
            grid->unknown_[idx] = static_cast<int>(grid->interior_.size());
            grid->interior_.push_back(idx);
        }
    }
    return grid;
}

} // namespace sesolv
