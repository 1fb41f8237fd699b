// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <span>
#include <vector>

namespace sesolv {

/// Symmetric banded matrix, lower storage: band[i * (bw + 1) + d] = A(i, i - d)
/// for d = 0..bw. All solver paths are strictly sequential with a fixed
/// elimination order, so results are bitwise reproducible.
struct BandMatrix {
    int n = 0;
    int bw = 0;
    std::vector<double> a;

    void resize(int n_, int bw_)
    {
        n = n_;
        bw = bw_;
        a.assign(static_cast<std::size_t>(n) * (bw + 1), 0.0);
    }
    double& at(int i, int d) { return a[static_cast<std::size_t>(i) * (bw + 1) + d]; }
    double at(int i, int d) const { return a[static_cast<std::size_t>(i) * (bw + 1) + d]; }
};

/// In-place LDL^T factorization of an SPD band matrix followed by
/// forward/diagonal/backward substitution.
class BandCholesky {
public:
    /// Factors the matrix; returns false if a pivot is not strictly positive.
    bool factorize(BandMatrix matrix);

    /// Solves A x = b for the factored matrix.
    void solve(std::span<const double> b, std::span<double> x) const;

    int size() const { return f_.n; }

private:
    BandMatrix f_;
};

using ApplyFn = std::function<void(std::span<const double>, std::span<double>)>;

struct CgResult {
    int iterations = 0;
    double residual = 0.0; // final |b - A x|_2
    bool converged = false;
};

/// Jacobi-preconditioned conjugate gradients with a fixed iteration order.
/// Stops when |r|_2 <= tol. x holds the initial guess on entry.
CgResult conjugate_gradient(const ApplyFn& apply, std::span<const double> diag,
                            std::span<const double> b, std::span<double> x,
                            double tol, int max_iters);

} // namespace sesolv
