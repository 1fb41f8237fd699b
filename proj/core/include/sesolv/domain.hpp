// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <variant>

namespace sesolv {

/// Open interval (a, b) in one dimension.
struct Interval {
    double a = 0.0;
    double b = 1.0;
};

/// Axis-aligned open rectangle (ax, bx) x (ay, by).
struct Rectangle {
    double ax = 0.0;
    double bx = 1.0;
    double ay = 0.0;
    double by = 1.0;
};

/// Ball of radius R in R^dim, represented by its radial section [0, R].
struct RadialBall {
    int dim = 2;
    double radius = 1.0;
};

/// Annulus {r0 < |x| < r1} in R^dim, represented by its radial section.
struct RadialAnnulus {
    int dim = 2;
    double r0 = 0.5;
    double r1 = 1.0;
};

using Domain = std::variant<Interval, Rectangle, RadialBall, RadialAnnulus>;

/// Throws InvalidArgumentError if endpoints/radii/dimension are inconsistent.
void validate(const Domain& domain);

/// Number of tensor axes of the discretization (1 for interval and radial
/// domains, 2 for rectangles).
int axis_count(const Domain& domain);

bool is_radial(const Domain& domain);

/// Ambient space dimension: dim for radial domains, otherwise the axis count.
int ambient_dim(const Domain& domain);

/// Smallest side length; radial domains report the radial extent. The default
/// continuation margin is width()/16.
double width(const Domain& domain);

/// Lebesgue measure of the domain (full N-dimensional measure for radial
/// domains, e.g. pi R^2 for a disk).
double measure(const Domain& domain);

std::string describe(const Domain& domain);

/// Surface measure of the unit sphere in R^n (2 for n = 1, 2*pi for n = 2).
double unit_sphere_area(int n);

} // namespace sesolv
