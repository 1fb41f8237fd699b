// SPDX-License-Identifier: Apache-2.0
#include "sesolv/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace sesolv {

bool BandCholesky::factorize(BandMatrix matrix)
{
    f_ = std::move(matrix);
    const int n = f_.n, bw = f_.bw;
    // Column version of LDL^T restricted to the band. After the loop,
    // at(i, 0) holds D(i) and at(i, d) holds L(i, i-d) for d >= 1.
    for (int j = 0; j < n; ++j) {
        double dj = f_.at(j, 0);
        const int k0 = std::max(0, j - bw);
        for (int k = k0; k < j; ++k) {
            const double ljk = f_.at(j, j - k);
            dj -= ljk * ljk * f_.at(k, 0);
        }
        if (!(dj > 0.0)) return false;
        f_.at(j, 0) = dj;
        const int i_end = std::min(n - 1, j + bw);
        for (int i = j + 1; i <= i_end; ++i) {
            double s = f_.at(i, i - j);
            const int k1 = std::max({0, i - bw, j - bw});
            for (int k = k1; k < j; ++k)
                s -= f_.at(i, i - k) * f_.at(j, j - k) * f_.at(k, 0);
            f_.at(i, i - j) = s / dj;
        }
    }
    return true;
}

void BandCholesky::solve(std::span<const double> b, std::span<double> x) const
{
    const int n = f_.n, bw = f_.bw;
    for (int i = 0; i < n; ++i) {
        double s = b[i];
        const int k0 = std::max(0, i - bw);
        for (int k = k0; k < i; ++k)
            s -= f_.at(i, i - k) * x[k];
        x[i] = s;
    }
    for (int i = 0; i < n; ++i)
        x[i] /= f_.at(i, 0);
    for (int i = n - 1; i >= 0; --i) {
        double s = x[i];
        const int k_end = std::min(n - 1, i + bw);
        for (int k = i + 1; k <= k_end; ++k)
            s -= f_.at(k, k - i) * x[k];
        x[i] = s;
    }
}

CgResult conjugate_gradient(const ApplyFn& apply, std::span<const double> diag,
                            std::span<const double> b, std::span<double> x,
                            double tol, int max_iters)
{
    const int n = static_cast<int>(b.size());
    std::vector<double> r(n), z(n), p(n), ap(n);

    apply(x, ap);
    for (int i = 0; i < n; ++i) r[i] = b[i] - ap[i];
    auto precond = [&](const std::vector<double>& in, std::vector<double>& out) {
        for (int i = 0; i < n; ++i) out[i] = in[i] / diag[i];
    };
    precond(r, z);
    p = z;
    double rz = 0.0, rnorm2 = 0.0;
    for (int i = 0; i < n; ++i) {
        rz += r[i] * z[i];
        rnorm2 += r[i] * r[i];
    }

    CgResult res;
    res.residual = std::sqrt(rnorm2);
    if (res.residual <= tol) {
        res.converged = true;
        return res;
    }
    for (int it = 0; it < max_iters; ++it) {
        apply(p, ap);
        double pap = 0.0;
        for (int i = 0; i < n; ++i) pap += p[i] * ap[i];
        if (!(pap > 0.0)) break; // breakdown
        const double alpha = rz / pap;
        rnorm2 = 0.0;
        for (int i = 0; i < n; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
            rnorm2 += r[i] * r[i];
        }
        res.iterations = it + 1;
        res.residual = std::sqrt(rnorm2);
        if (res.residual <= tol) {
            res.converged = true;
            return res;
        }
        precond(r, z);
        double rz_new = 0.0;
        for (int i = 0; i < n; ++i) rz_new += r[i] * z[i];
        for (int i = 0; i < n; ++i) p[i] = z[i] + (rz_new / rz) * p[i];
        rz = rz_new;
    }
    return res;
}

} // namespace sesolv
