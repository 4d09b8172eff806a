#pragma once

#include "degell/errors.hpp"
#include "degell/types.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <string>

namespace degell {

inline constexpr int kMaxMatrixDim = 8;

/// Mirrors the upper triangle of X into a full symmetric matrix.
template <typename Derived>
mat_type<typename Derived::Scalar> symmetrize_upper(const Eigen::MatrixBase<Derived>& X) {
    using Scalar = typename Derived::Scalar;
    const Eigen::Index n = X.rows();
    mat_type<Scalar> A(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            A(i, j) = X(i, j);
            A(j, i) = X(i, j);
        }
    }
    return A;
}

namespace detail {

template <typename Scalar>
void check_symmetric_input(const mat_type<Scalar>& A) {
    if (A.rows() != A.cols()) throw InvalidInput("eigenvalues: matrix is not square");
    if (A.rows() < 2 || A.rows() > kMaxMatrixDim) {
        throw InvalidInput("eigenvalues: dimension " + std::to_string(A.rows()) + " outside [2, 8]");
    }
    if (!A.allFinite()) throw InvalidInput("eigenvalues: non-finite entry");
}

// Cyclic Jacobi; stops once the off-diagonal Frobenius norm drops below
// 1e-14 of the full norm.
template <typename Scalar>
vec_type<Scalar> jacobi_eigenvalues(mat_type<Scalar> A) {
    using std::abs;
    using std::sqrt;
    const Eigen::Index n = A.rows();
    const Scalar total = A.norm();
    const Scalar threshold = Scalar(1e-14) * total;
    for (int sweep = 0; sweep < 64; ++sweep) {
        Scalar off2(0);
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q) off2 += 2 * A(p, q) * A(p, q);
        if (sqrt(off2) <= threshold) break;
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const Scalar apq = A(p, q);
                if (apq == Scalar(0)) continue;
                const Scalar theta = (A(q, q) - A(p, p)) / (2 * apq);
                const Scalar t = (theta >= 0 ? Scalar(1) : Scalar(-1)) / (abs(theta) + sqrt(theta * theta + 1));
                const Scalar c = 1 / sqrt(t * t + 1);
                const Scalar s = t * c;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Scalar akp = A(k, p);
                    const Scalar akq = A(k, q);
                    A(k, p) = c * akp - s * akq;
                    A(k, q) = s * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Scalar apk = A(p, k);
                    const Scalar aqk = A(q, k);
                    A(p, k) = c * apk - s * aqk;
                    A(q, k) = s * apk + c * aqk;
                }
                A(p, q) = Scalar(0);
                A(q, p) = Scalar(0);
            }
        }
    }
    return A.diagonal();
}

} // namespace detail

/// Eigenvalues of the symmetric matrix whose upper triangle is X, in
/// nondecreasing order. Closed form for N = 2, cyclic Jacobi for 3 <= N <= 8.
template <typename Derived>
vec_type<typename Derived::Scalar> eigenvalues_sorted(const Eigen::MatrixBase<Derived>& X) {
    using Scalar = typename Derived::Scalar;
    using std::hypot;
    mat_type<Scalar> A = symmetrize_upper(X);
    detail::check_symmetric_input(A);
    vec_type<Scalar> lambda(A.rows());
    if (A.rows() == 2) {
        const Scalar mean = (A(0, 0) + A(1, 1)) / 2;
        const Scalar radius = hypot((A(0, 0) - A(1, 1)) / 2, A(0, 1));
        lambda << mean - radius, mean + radius;
        return lambda;
    }
    lambda = detail::jacobi_eigenvalues<Scalar>(std::move(A));
    std::sort(lambda.data(), lambda.data() + lambda.size());
    return lambda;
}

} // namespace degell
