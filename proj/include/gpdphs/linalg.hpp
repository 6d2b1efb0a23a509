#pragma once

#include <Eigen/Core>

namespace gpdphs::linalg {

/// Unblocked in-place Cholesky of the lower triangle of A.
/// Reference implementation; kept for testing the parallel path.
/// Returns false if a pivot is non-positive or non-finite.
bool cholesky_serial(Eigen::MatrixXd& a);

/// Tiled right-looking Cholesky, trailing updates parallelized over tile
/// pairs with OpenMP. Per-tile arithmetic order is fixed, so the result is
/// bitwise independent of the thread count.
bool cholesky_omp(Eigen::MatrixXd& a);

/// L x = b forward substitution (L lower triangular).
Eigen::VectorXd solve_lower(const Eigen::MatrixXd& l, const Eigen::VectorXd& b);

/// L^T x = b back substitution.
Eigen::VectorXd solve_lower_transpose(const Eigen::MatrixXd& l,
                                      const Eigen::VectorXd& b);

/// Multi-RHS L X = B, columns solved independently (OpenMP over columns).
Eigen::MatrixXd solve_lower_multi(const Eigen::MatrixXd& l,
                                  const Eigen::MatrixXd& b);

/// Serial reference for solve_lower_multi.
Eigen::MatrixXd solve_lower_multi_serial(const Eigen::MatrixXd& l,
                                         const Eigen::MatrixXd& b);

/// (L L^T)^{-1} b from a precomputed factor.
Eigen::VectorXd chol_apply_inverse(const Eigen::MatrixXd& l,
                                   const Eigen::VectorXd& b);

/// Result of a jittered factorization: the factor plus the diagonal shift
/// that was needed to make it succeed (0 when none was).
struct CholeskyResult {
    Eigen::MatrixXd factor;  // lower triangular
    double jitter = 0.0;
};

/// Cholesky of K with an adaptive jitter schedule: starts at
/// 1e-8 * mean(diag K) and multiplies by 10 up to 1e-2 * mean(diag K).
/// Throws NotPositiveDefinite if every attempt fails.
CholeskyResult cholesky_jittered(const Eigen::MatrixXd& k);

/// K^{-1} B via jittered Cholesky (K symmetric).
Eigen::MatrixXd chol_solve(const Eigen::MatrixXd& k, const Eigen::MatrixXd& b);

/// Smallest eigenvalue of a symmetric matrix.
double min_eigenvalue(const Eigen::MatrixXd& sym);

/// Symmetrize, then clamp negative eigenvalues of a symmetric matrix at 0.
Eigen::MatrixXd clamp_psd(const Eigen::MatrixXd& sym);

}  // namespace gpdphs::linalg
