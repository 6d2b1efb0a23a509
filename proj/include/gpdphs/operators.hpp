#pragma once

#include <Eigen/Core>
#include <array>
#include <functional>
#include <string>
#include <vector>

#include "gpdphs/grid.hpp"

namespace gpdphs {

/// First-derivative matrix on a uniform grid satisfying the
/// summation-by-parts identity H D + (H D)^T = diag(-1, 0, ..., 0, 1)
/// with H = dz * diag(1/2, 1, ..., 1, 1/2).
struct DiffMatrix {
    SpatialGrid grid;
    Eigen::MatrixXd d;
};

DiffMatrix diff_matrix_sbp(const SpatialGrid& grid);

/// Trapezoid norm weights h_i = dz * (1/2, 1, ..., 1, 1/2).
Eigen::VectorXd sbp_norm_weights(const SpatialGrid& grid);

/// Block-diagonal [H, H] weights over a stacked (p, q) state.
Eigen::VectorXd stacked_norm_weights(const SpatialGrid& grid);

/// Bounds and starting values for the unknown operator parameters.
struct ThetaSpec {
    std::vector<std::string> names;
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;
    Eigen::VectorXd init;

    int size() const { return static_cast<int>(init.size()); }
};

/// Structurally known (J - R) and G builders with unknown parameters theta,
/// plus the variational scale tying discrete gradients to efforts.
struct OperatorStructure {
    SpatialGrid grid;
    ThetaSpec theta;
    std::string id;  // registry key used by model save/load
    int input_dim = 0;

    /// discrete (J - R), 2N x 2N
    std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> a0;
    /// discrete input map G, 2N x input_dim
    std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> input_map;
    /// fast A0 * effort application (falls back to the dense build)
    std::function<void(const Eigen::VectorXd&, const Eigen::VectorXd&,
                       Eigen::VectorXd&)>
        apply_a0;

    double variational_scale() const { return 1.0 / grid.spacing; }
};

/// Vibrating-string structure: A0 = [[-r I, D], [D, 0]], theta = {r},
/// no distributed input.
OperatorStructure string_structure(const SpatialGrid& grid);

/// Discrete functional derivative: effort = (1/dz) * gradient, for a
/// Hamiltonian approximated by the uniform quadrature dz * sum(density).
Eigen::VectorXd variational_derivative(const Eigen::VectorXd& gradient,
                                       const SpatialGrid& grid);

/// Diagonal map from discrete Hamiltonian gradients to port efforts used by
/// the learned models: inverse trapezoid quadrature weights, with the
/// p-efforts at both fixed ends zeroed. Invariant: Z * A0 * diag(effort_scale)
/// is dissipative in the gradient inner product for every theta with r >= 0.
Eigen::VectorXd effort_scale(const SpatialGrid& grid);

/// Indices of the p rows at the two boundary nodes.
std::array<int, 2> p_boundary_rows(const SpatialGrid& grid);

/// The constant map A from Hamiltonian gradients to state derivatives used
/// throughout the learned model: A = Z * A0(theta) * diag(effort_scale),
/// where Z zeroes the p rows at the boundary (fixed ends).
Eigen::MatrixXd model_operator(const OperatorStructure& structure,
                               const Eigen::VectorXd& theta);

/// Structural report of check_skew.
struct SkewReport {
    double max_interior_deviation = 0.0;  // symmetric part off the diagonal blocks
    double r_part_eigen_floor = 0.0;      // min eig of the symmetric R part
    int worst_row = -1;
    int worst_col = -1;
    bool pass = false;
};

/// Verifies that H2 A0 + A0^T H2 equals boundary terms plus a negative
/// semidefinite block-diagonal dissipation part.
SkewReport check_skew(const OperatorStructure& structure,
                      const Eigen::VectorXd& theta);

}  // namespace gpdphs
