#pragma once

#include <Eigen/Core>
#include <functional>
#include <vector>

namespace gpdphs {

struct SimplexOptions {
    int max_iter = 500;
    double initial_step = 0.4;   // per-coordinate offset for the start simplex
    double f_tol = 1e-9;         // relative spread of simplex values
    double x_tol = 1e-7;         // simplex diameter
};

struct SimplexResult {
    Eigen::VectorXd x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> trace;   // best value after each iteration
};

/// Nelder-Mead minimization inside a box. Proposed points are clamped into
/// [lower, upper] componentwise. Objectives may signal an infeasible point
/// by returning a non-finite value. Fully deterministic.
SimplexResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                          const Eigen::VectorXd& start,
                          const Eigen::VectorXd& lower,
                          const Eigen::VectorXd& upper,
                          const SimplexOptions& opts = {});

}  // namespace gpdphs
