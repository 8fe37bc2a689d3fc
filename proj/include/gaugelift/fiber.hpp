/// @file fiber.hpp
/// @brief Views and helpers for the N x N fiber matrices stored row-major
///        inside cochain arrays. Eigen does the per-matrix linear algebra.

#pragma once

#include <Eigen/Dense>
#include <cmath>

namespace gaugelift {

using MatX = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MatMap = Eigen::Map<MatX>;
using ConstMatMap = Eigen::Map<const MatX>;

inline MatMap fib(double* p, int N) { return MatMap(p, N, N); }
inline ConstMatMap fib(const double* p, int N) { return ConstMatMap(p, N, N); }

/// Frobenius norm squared of a raw N*N block.
inline double frob2(const double* p, int N) {
    double s = 0.0;
    for (int i = 0; i < N * N; ++i) s += p[i] * p[i];
    return s;
}

inline double frob(const double* p, int N) { return std::sqrt(frob2(p, N)); }

/// Frobenius inner product tr(a^T b) of two raw N*N blocks.
inline double frob_dot(const double* a, const double* b, int N) {
    double s = 0.0;
    for (int i = 0; i < N * N; ++i) s += a[i] * b[i];
    return s;
}

}  // namespace gaugelift
