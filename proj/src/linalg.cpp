#include "gpdphs/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "gpdphs/errors.hpp"

namespace gpdphs::linalg {

bool cholesky_serial(Eigen::MatrixXd& a) {
    const int n = static_cast<int>(a.rows());
    for (int j = 0; j < n; ++j) {
        double d = a(j, j);
        for (int k = 0; k < j; ++k) d -= a(j, k) * a(j, k);
        if (!(d > 0.0) || !std::isfinite(d)) return false;
        const double ljj = std::sqrt(d);
        a(j, j) = ljj;
        for (int i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (int k = 0; k < j; ++k) s -= a(i, k) * a(j, k);
            a(i, j) = s / ljj;
        }
    }
    // zero the strict upper triangle so the factor is clean
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) a(i, j) = 0.0;
    return true;
}

namespace {
constexpr int kTile = 128;
}

bool cholesky_omp(Eigen::MatrixXd& a) {
    const int n = static_cast<int>(a.rows());
    const int nt = (n + kTile - 1) / kTile;
    bool ok = true;

    for (int k = 0; k < nt && ok; ++k) {
        const int k0 = k * kTile;
        const int kb = std::min(kTile, n - k0);

        // factor the diagonal tile in place (small, serial)
        {
            Eigen::MatrixXd d = a.block(k0, k0, kb, kb);
            if (!cholesky_serial(d)) {
                ok = false;
                break;
            }
            a.block(k0, k0, kb, kb) = d;
        }

        // panel solve: A_ik <- A_ik * L_kk^{-T}, tiles independent
        const auto lkk = a.block(k0, k0, kb, kb);
#pragma omp parallel for schedule(static)
        for (int i = k + 1; i < nt; ++i) {
            const int i0 = i * kTile;
            const int ib = std::min(kTile, n - i0);
            auto panel = a.block(i0, k0, ib, kb);
            lkk.transpose()
                .triangularView<Eigen::Upper>()
                .solveInPlace<Eigen::OnTheRight>(panel);
        }

        // trailing update: A_ij -= A_ik A_jk^T for j <= i, tiles disjoint
        const int rem = nt - (k + 1);
#pragma omp parallel for schedule(dynamic)
        for (int idx = 0; idx < rem * (rem + 1) / 2; ++idx) {
            // map linear index to (i, j) in the lower-triangular tile set
            int r = static_cast<int>((std::sqrt(8.0 * idx + 1.0) - 1.0) / 2.0);
            while ((r + 1) * (r + 2) / 2 <= idx) ++r;
            while (r * (r + 1) / 2 > idx) --r;
            const int i = k + 1 + r;
            const int j = k + 1 + (idx - r * (r + 1) / 2);
            const int i0 = i * kTile, ib = std::min(kTile, n - i0);
            const int j0 = j * kTile, jb = std::min(kTile, n - j0);
            a.block(i0, j0, ib, jb).noalias() -=
                a.block(i0, k0, ib, kb) * a.block(j0, k0, jb, kb).transpose();
        }
    }

    if (!ok) return false;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) a(i, j) = 0.0;
    return true;
}

Eigen::VectorXd solve_lower(const Eigen::MatrixXd& l, const Eigen::VectorXd& b) {
    Eigen::VectorXd x = b;
    l.triangularView<Eigen::Lower>().solveInPlace(x);
    return x;
}

Eigen::VectorXd solve_lower_transpose(const Eigen::MatrixXd& l,
                                      const Eigen::VectorXd& b) {
    Eigen::VectorXd x = b;
    l.transpose().triangularView<Eigen::Upper>().solveInPlace(x);
    return x;
}

Eigen::MatrixXd solve_lower_multi(const Eigen::MatrixXd& l,
                                  const Eigen::MatrixXd& b) {
    Eigen::MatrixXd x = b;
    const int cols = static_cast<int>(b.cols());
#pragma omp parallel for schedule(static)
    for (int c = 0; c < cols; ++c) {
        auto col = x.col(c);
        l.triangularView<Eigen::Lower>().solveInPlace(col);
    }
    return x;
}

Eigen::MatrixXd solve_lower_multi_serial(const Eigen::MatrixXd& l,
                                         const Eigen::MatrixXd& b) {
    Eigen::MatrixXd x = b;
    for (int c = 0; c < b.cols(); ++c) {
        auto col = x.col(c);
        l.triangularView<Eigen::Lower>().solveInPlace(col);
    }
    return x;
}

Eigen::VectorXd chol_apply_inverse(const Eigen::MatrixXd& l,
                                   const Eigen::VectorXd& b) {
    return solve_lower_transpose(l, solve_lower(l, b));
}

CholeskyResult cholesky_jittered(const Eigen::MatrixXd& k) {
    const int n = static_cast<int>(k.rows());
    if (n == 0) throw InvalidArgument("cholesky_jittered: empty matrix");
    if (!k.allFinite())
        throw InvalidArgument("cholesky_jittered: matrix has non-finite entries");

    const double scale = k.diagonal().mean();
    CholeskyResult res;
    res.factor = k;
    res.jitter = 0.0;
    if (cholesky_omp(res.factor)) return res;

    double jitter = 1e-8 * scale;
    const double max_jitter = 1e-2 * scale;
    while (jitter <= max_jitter * (1.0 + 1e-15)) {
        res.factor = k;
        res.factor.diagonal().array() += jitter;
        if (cholesky_omp(res.factor)) {
            res.jitter = jitter;
            return res;
        }
        jitter *= 10.0;
    }
    throw NotPositiveDefinite(
        "cholesky_jittered: factorization failed at maximum jitter", max_jitter);
}

Eigen::MatrixXd chol_solve(const Eigen::MatrixXd& k, const Eigen::MatrixXd& b) {
    if (k.rows() != k.cols()) throw InvalidArgument("chol_solve: K must be square");
    if (k.rows() != b.rows())
        throw InvalidArgument("chol_solve: dimension mismatch between K and B");
    const CholeskyResult c = cholesky_jittered(k);
    Eigen::MatrixXd x = solve_lower_multi(c.factor, b);
    const int cols = static_cast<int>(x.cols());
#pragma omp parallel for schedule(static)
    for (int i = 0; i < cols; ++i) {
        auto col = x.col(i);
        c.factor.transpose().triangularView<Eigen::Upper>().solveInPlace(col);
    }
    return x;
}

double min_eigenvalue(const Eigen::MatrixXd& sym) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym,
                                                      Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

Eigen::MatrixXd clamp_psd(const Eigen::MatrixXd& sym) {
    Eigen::MatrixXd s = 0.5 * (sym + sym.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace gpdphs::linalg
