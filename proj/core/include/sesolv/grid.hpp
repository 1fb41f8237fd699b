// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <vector>

#include "sesolv/domain.hpp"

namespace sesolv {

/// Node coordinates. 1D and radial grids use x only (x is the radius for
/// radial domains); rectangles use x and y.
struct Point {
    double x = 0.0;
    double y = 0.0;
};

enum class Axis { X, Y };

/// One gradient "cell" of the mesh connecting two adjacent nodes. The
/// Dirichlet energy of a nodal field u is sum_e coeff_e * (u_a - u_b)^2, and
/// the stiffness matrix assembles from the same list, so quadrature and
/// operator are consistent by construction. For radial grids the coefficient
/// carries the weight r^(N-1) at the edge midpoint (times the unit-sphere
/// area), so energies are genuine N-dimensional integrals.
struct GridEdge {
    int a = 0;
    int b = 0;
    double coeff = 0.0;
};

/// Uniform tensor grid over a Domain with m nodes per axis.
///
/// Node indexing is row-major with x fastest: idx = j*m + i in 2D, idx = i
/// otherwise. Every node is either interior or boundary; for a RadialBall
/// the origin r = 0 is an interior node (the operator closes it with the
/// symmetry condition u'(0) = 0). Quadrature weights are the measures of the
/// nodes' Voronoi cells (trapezoidal in the Cartesian case) and sum to the
/// domain measure exactly.
class Grid {
public:
    const Domain& domain() const { return domain_; }
    int nodes_per_axis() const { return m_; }
    int node_count() const { return static_cast<int>(points_.size()); }
    int interior_count() const { return static_cast<int>(interior_.size()); }
    int axis_count() const { return axes_; }
    bool radial() const { return radial_; }

    /// Grid spacing along an axis (axis 1 only exists in 2D).
    double spacing(int axis = 0) const { return axis == 0 ? hx_ : hy_; }
    double min_spacing() const { return axes_ == 2 ? std::min(hx_, hy_) : hx_; }

    const Point& node(int idx) const { return points_[idx]; }
    bool is_boundary(int idx) const { return boundary_mask_[idx] != 0; }

    /// Node indices of the interior unknowns, in ascending node order.
    const std::vector<int>& interior_nodes() const { return interior_; }
    /// Unknown index of a node, or -1 for boundary nodes.
    int unknown_of(int idx) const { return unknown_[idx]; }

    double quad_weight(int idx) const { return weight_[idx]; }
    const std::vector<double>& quad_weights() const { return weight_; }

    /// Distance from a node to the boundary of the domain.
    double boundary_distance(int idx) const { return bdist_[idx]; }

    const std::vector<GridEdge>& edges() const { return edges_; }

    /// True when the grid admits a mirror reflection about the midplane
    /// orthogonal to the given axis (Cartesian grids only).
    bool reflectable(Axis axis) const;
    /// Mirror image of a node index across the midplane.
    int mirror_node(int idx, Axis axis) const;

private:
    friend std::shared_ptr<const Grid> build_grid(const Domain&, int);

    Domain domain_;
    int m_ = 0;
    int axes_ = 1;
    bool radial_ = false;
    double hx_ = 0.0;
    double hy_ = 0.0;
    std::vector<Point> points_;
    std::vector<unsigned char> boundary_mask_;
    std::vector<int> interior_;
    std::vector<int> unknown_;
    std::vector<double> weight_;
    std::vector<double> bdist_;
    std::vector<GridEdge> edges_;
};

/// Builds the uniform grid with m nodes per axis (m >= 3). Throws
/// InvalidArgumentError for m < 3 or an inconsistent domain.
std::shared_ptr<const Grid> build_grid(const Domain& domain, int m);

} // namespace sesolv
