// SPDX-License-Identifier: Apache-2.0
#include "sesolv/domain.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "sesolv/errors.hpp"

namespace sesolv {

double unit_sphere_area(int n)
{
    return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

void validate(const Domain& domain)
{
    std::visit(
        [](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Interval>) {
                if (!(d.a < d.b))
                    throw InvalidArgumentError("interval endpoints must satisfy a < b");
            } else if constexpr (std::is_same_v<T, Rectangle>) {
                if (!(d.ax < d.bx) || !(d.ay < d.by))
                    throw InvalidArgumentError("rectangle endpoints must be ordered per axis");
            } else if constexpr (std::is_same_v<T, RadialBall>) {
                if (d.dim < 1)
                    throw InvalidArgumentError("radial dimension must be >= 1");
                if (!(d.radius > 0.0))
                    throw InvalidArgumentError("ball radius must be positive");
            } else {
                if (d.dim < 1)
                    throw InvalidArgumentError("radial dimension must be >= 1");
                if (!(d.r0 > 0.0) || !(d.r0 < d.r1))
                    throw InvalidArgumentError("annulus radii must satisfy 0 < r0 < r1");
            }
        },
        domain);
}

int axis_count(const Domain& domain)
{
    return std::holds_alternative<Rectangle>(domain) ? 2 : 1;
}

bool is_radial(const Domain& domain)
{
    return std::holds_alternative<RadialBall>(domain) || std::holds_alternative<RadialAnnulus>(domain);
}

int ambient_dim(const Domain& domain)
{
    if (const auto* b = std::get_if<RadialBall>(&domain)) return b->dim;
    if (const auto* a = std::get_if<RadialAnnulus>(&domain)) return a->dim;
    return axis_count(domain);
}

double width(const Domain& domain)
{
    return std::visit(
        [](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Interval>) {
                return d.b - d.a;
            } else if constexpr (std::is_same_v<T, Rectangle>) {
                return std::min(d.bx - d.ax, d.by - d.ay);
            } else if constexpr (std::is_same_v<T, RadialBall>) {
                return d.radius;
            } else {
                return d.r1 - d.r0;
            }
        },
        domain);
}

double measure(const Domain& domain)
{
    return std::visit(
        [](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Interval>) {
                return d.b - d.a;
            } else if constexpr (std::is_same_v<T, Rectangle>) {
                return (d.bx - d.ax) * (d.by - d.ay);
            } else if constexpr (std::is_same_v<T, RadialBall>) {
                return unit_sphere_area(d.dim) * std::pow(d.radius, d.dim) / d.dim;
            } else {
                return unit_sphere_area(d.dim) *
                       (std::pow(d.r1, d.dim) - std::pow(d.r0, d.dim)) / d.dim;
            }
        },
        domain);
}

std::string describe(const Domain& domain)
{
    std::ostringstream os;
    std::visit(
        [&os](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Interval>) {
                os << "interval(" << d.a << ", " << d.b << ")";
            } else if constexpr (std::is_same_v<T, Rectangle>) {
                os << "rectangle(" << d.ax << ", " << d.bx << ") x (" << d.ay << ", " << d.by << ")";
            } else if constexpr (std::is_same_v<T, RadialBall>) {
                os << "ball(dim=" << d.dim << ", R=" << d.radius << ")";
            } else {
                os << "annulus(dim=" << d.dim << ", " << d.r0 << " < r < " << d.r1 << ")";
            }
        },
        domain);
    return os.str();
}

} // namespace sesolv
