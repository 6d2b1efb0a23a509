#include "gpdphs/operators.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "gpdphs/errors.hpp"
#include "gpdphs/linalg.hpp"

namespace gpdphs {

DiffMatrix diff_matrix_sbp(const SpatialGrid& grid) {
    if (grid.count < 3) throw InvalidArgument("diff_matrix_sbp: need N >= 3");
    const int n = grid.count;
    const double dz = grid.spacing;

    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    d(0, 0) = -1.0 / dz;
    d(0, 1) = 1.0 / dz;
    for (int i = 1; i < n - 1; ++i) {
        d(i, i - 1) = -0.5 / dz;
        d(i, i + 1) = 0.5 / dz;
    }
    d(n - 1, n - 2) = -1.0 / dz;
    d(n - 1, n - 1) = 1.0 / dz;

    return DiffMatrix{grid, std::move(d)};
}

Eigen::VectorXd sbp_norm_weights(const SpatialGrid& grid) {
    Eigen::VectorXd h = Eigen::VectorXd::Constant(grid.count, grid.spacing);
    h[0] *= 0.5;
    h[grid.count - 1] *= 0.5;
    return h;
}

Eigen::VectorXd stacked_norm_weights(const SpatialGrid& grid) {
    const Eigen::VectorXd h = sbp_norm_weights(grid);
    Eigen::VectorXd h2(2 * grid.count);
    h2 << h, h;
    return h2;
}

OperatorStructure string_structure(const SpatialGrid& grid) {
    OperatorStructure s;
    s.grid = grid;
    s.id = "string";
    s.input_dim = 0;
    s.theta.names = {"r"};
    s.theta.lower = Eigen::VectorXd::Constant(1, 1e-4);
    s.theta.upper = Eigen::VectorXd::Constant(1, 1.0);
    s.theta.init = Eigen::VectorXd::Constant(1, 0.1);

    const int n = grid.count;
    s.a0 = [grid, n](const Eigen::VectorXd& theta) {
        const double r = theta[0];
        const Eigen::MatrixXd d = diff_matrix_sbp(grid).d;
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2 * n, 2 * n);
        a.topLeftCorner(n, n) = -r * Eigen::MatrixXd::Identity(n, n);
        a.topRightCorner(n, n) = d;
        a.bottomLeftCorner(n, n) = d;
        return a;
    };
    s.input_map = [n](const Eigen::VectorXd&) {
        return Eigen::MatrixXd::Zero(2 * n, 0).eval();
    };
    // stencil application of [[-r I, D], [D, 0]]
    s.apply_a0 = [n, dz = grid.spacing](const Eigen::VectorXd& theta,
                                        const Eigen::VectorXd& e,
                                        Eigen::VectorXd& out) {
        const double r = theta[0];
        const double inv2 = 0.5 / dz;
        const double inv1 = 1.0 / dz;
        out.resize(2 * n);
        auto ep = e.head(n);
        auto eq = e.tail(n);
        out[0] = -r * ep[0] + inv1 * (eq[1] - eq[0]);
        out[n] = inv1 * (ep[1] - ep[0]);
        for (int i = 1; i < n - 1; ++i) {
            out[i] = -r * ep[i] + inv2 * (eq[i + 1] - eq[i - 1]);
            out[n + i] = inv2 * (ep[i + 1] - ep[i - 1]);
        }
        out[n - 1] = -r * ep[n - 1] + inv1 * (eq[n - 1] - eq[n - 2]);
        out[2 * n - 1] = inv1 * (ep[n - 1] - ep[n - 2]);
    };
    return s;
}

Eigen::VectorXd variational_derivative(const Eigen::VectorXd& gradient,
                                       const SpatialGrid& grid) {
    if (gradient.size() != 2 * grid.count)
        throw InvalidArgument("variational_derivative: vector length != 2N");
    return gradient / grid.spacing;
}

Eigen::VectorXd effort_scale(const SpatialGrid& grid) {
    const int n = grid.count;
    Eigen::VectorXd w = stacked_norm_weights(grid).cwiseInverse();
    w[0] = 0.0;      // p at left end
    w[n - 1] = 0.0;  // p at right end
    return w;
}

std::array<int, 2> p_boundary_rows(const SpatialGrid& grid) {
    return {0, grid.count - 1};
}

Eigen::MatrixXd model_operator(const OperatorStructure& structure,
                               const Eigen::VectorXd& theta) {
    if (theta.size() != structure.theta.size())
        throw InvalidArgument("model_operator: theta size mismatch");
    Eigen::MatrixXd a = structure.a0(theta);
    a = a * effort_scale(structure.grid).asDiagonal();
    for (int row : p_boundary_rows(structure.grid)) a.row(row).setZero();
    return a;
}

SkewReport check_skew(const OperatorStructure& structure,
                      const Eigen::VectorXd& theta) {
    const int n = structure.grid.count;
    const Eigen::MatrixXd a = structure.a0(theta);
    const Eigen::VectorXd h2 = stacked_norm_weights(structure.grid);
    const Eigen::MatrixXd s =
        h2.asDiagonal() * a + a.transpose() * h2.asDiagonal();

    // The symmetric part must be block-diagonal dissipation plus boundary
    // port terms: anything symmetric left in the p-q coupling blocks away
    // from the corners signals a broken skew structure.
    SkewReport rep;
    auto is_corner = [n](int i, int j) {
        auto node = [n](int k) { return k < n ? k : k - n; };
        const int ni = node(i), nj = node(j);
        return (ni == 0 || ni == n - 1) && (nj == 0 || nj == n - 1);
    };
    for (int i = 0; i < 2 * n; ++i) {
        for (int j = 0; j < 2 * n; ++j) {
            const bool same_block = (i < n) == (j < n);
            if (same_block || is_corner(i, j)) continue;
            const double dev = std::abs(s(i, j));
            if (dev > rep.max_interior_deviation) {
                rep.max_interior_deviation = dev;
                rep.worst_row = i;
                rep.worst_col = j;
            }
        }
    }

    // Dissipation part: -1/2 of the block-diagonal symmetric content, with
    // the boundary corners (port terms) masked out, must be PSD.
    Eigen::MatrixXd rsym = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int i = 0; i < 2 * n; ++i)
        for (int j = 0; j < 2 * n; ++j)
            if ((i < n) == (j < n) && !is_corner(i, j)) rsym(i, j) = -0.5 * s(i, j);
    rep.r_part_eigen_floor = linalg::min_eigenvalue(rsym);

    rep.pass = rep.max_interior_deviation < 1e-10 &&
               rep.r_part_eigen_floor > -1e-10;
    return rep;
}

}  // namespace gpdphs
