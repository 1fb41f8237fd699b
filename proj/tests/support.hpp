// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "sesolv/grid.hpp"
#include "sesolv/field.hpp"

namespace sesolv::testing {

inline std::shared_ptr<const Grid> unit_interval(int m)
{
    return build_grid(Interval{0.0, 1.0}, m);
}

inline ScalarField constant_field(const std::shared_ptr<const Grid>& grid, double value)
{
    return ScalarField(grid, value);
}

inline ScalarField ones(const std::shared_ptr<const Grid>& grid)
{
    return ScalarField(grid, 1.0);
}

inline double uniform01(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline ScalarField random_field(const std::shared_ptr<const Grid>& grid, std::uint64_t seed,
                                double lo = -1.0, double hi = 1.0)
{
    std::mt19937_64 rng(seed);
    std::vector<double> v(grid->node_count());
    for (double& x : v) x = lo + (hi - lo) * uniform01(rng);
    return {grid, std::move(v)};
}

// Recursive adaptive Simpson quadrature; independent of any closed form in
// the library. Handles piecewise-smooth integrands by refinement.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-12, int depth = 40)
{
    const double c = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fc = f(c);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fc + fb);
    std::function<double(double, double, double, double, double, double, double, int)> rec =
        [&](double a_, double b_, double fa_, double fb_, double fc_, double whole_, double tol_,
            int depth_) -> double {
        const double c_ = 0.5 * (a_ + b_);
        const double lm = 0.5 * (a_ + c_), rm = 0.5 * (c_ + b_);
        const double flm = f(lm), frm = f(rm);
        const double left = (c_ - a_) / 6.0 * (fa_ + 4.0 * flm + fc_);
        const double right = (b_ - c_) / 6.0 * (fc_ + 4.0 * frm + fb_);
        if (depth_ <= 0 || std::abs(left + right - whole_) < 15.0 * tol_)
            return left + right + (left + right - whole_) / 15.0;
        return rec(a_, c_, fa_, fc_, flm, left, 0.5 * tol_, depth_ - 1) +
               rec(c_, b_, fc_, fb_, frm, right, 0.5 * tol_, depth_ - 1);
    };
    return rec(a, b, fa, fb, fc, whole, tol, depth);
}

} // namespace sesolv::testing
