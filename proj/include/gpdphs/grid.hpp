#pragma once

#include <Eigen/Core>
#include <vector>

namespace gpdphs {

/// Uniform 1-D grid on [0, L] with N nodes, z_i = i * dz.
struct SpatialGrid {
    double length = 0.0;
    int count = 0;
    double spacing = 0.0;

    double node(int i) const { return spacing * i; }
    Eigen::VectorXd nodes() const;
    bool same_domain(const SpatialGrid& other) const;
    bool operator==(const SpatialGrid& other) const {
        return count == other.count && length == other.length;
    }
};

SpatialGrid make_grid(double length, int count);

/// State vector [p_0..p_{N-1}, q_0..q_{N-1}] on a grid.
struct StackedState {
    SpatialGrid grid;
    Eigen::VectorXd values;  // length 2N

    Eigen::VectorXd p() const { return values.head(grid.count); }
    Eigen::VectorXd q() const { return values.tail(grid.count); }
};

StackedState stack(const Eigen::VectorXd& p, const Eigen::VectorXd& q,
                   const SpatialGrid& grid);
std::pair<Eigen::VectorXd, Eigen::VectorXd> unstack(const StackedState& state);

/// Piecewise-linear resampling of both fields onto a target grid covering
/// the same [0, L]. Exact at shared nodes and on linear fields.
StackedState resample(const StackedState& state, const SpatialGrid& target);

/// Linear interpolation of a single nodal field onto target nodes.
Eigen::VectorXd resample_field(const Eigen::VectorXd& field,
                               const SpatialGrid& source,
                               const SpatialGrid& target);

/// Time-indexed sequence of states on one grid.
struct Trajectory {
    SpatialGrid grid;
    std::vector<double> times;
    std::vector<Eigen::VectorXd> states;  // each of length 2N

    std::size_t size() const { return times.size(); }
};

}  // namespace gpdphs
