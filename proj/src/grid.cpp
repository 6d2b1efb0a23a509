#include "gpdphs/grid.hpp"

#include <cmath>

#include "gpdphs/errors.hpp"

namespace gpdphs {

Eigen::VectorXd SpatialGrid::nodes() const {
    Eigen::VectorXd z(count);
    for (int i = 0; i < count; ++i) z[i] = node(i);
    return z;
}

bool SpatialGrid::same_domain(const SpatialGrid& other) const {
    return std::abs(length - other.length) <= 1e-12 * std::max(1.0, length);
}

SpatialGrid make_grid(double length, int count) {
    if (!(length > 0.0)) throw InvalidArgument("make_grid: length must be positive");
    if (count < 3) throw InvalidArgument("make_grid: need at least 3 nodes");
    SpatialGrid g;
    g.length = length;
    g.count = count;
    g.spacing = length / (count - 1);
    return g;
}

StackedState stack(const Eigen::VectorXd& p, const Eigen::VectorXd& q,
                   const SpatialGrid& grid) {
    if (p.size() != grid.count || q.size() != grid.count)
        throw InvalidArgument("stack: field length does not match grid");
    StackedState s;
    s.grid = grid;
    s.values.resize(2 * grid.count);
    s.values << p, q;
    return s;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> unstack(const StackedState& state) {
    return {state.p(), state.q()};
}

Eigen::VectorXd resample_field(const Eigen::VectorXd& field,
                               const SpatialGrid& source,
                               const SpatialGrid& target) {
    if (!source.same_domain(target))
        throw InvalidArgument("resample: grids cover different domains");
    if (field.size() != source.count)
        throw InvalidArgument("resample: field length does not match source grid");

    Eigen::VectorXd out(target.count);
    for (int j = 0; j < target.count; ++j) {
        const double z = target.node(j);
        double s = z / source.spacing;
        int i = static_cast<int>(std::floor(s));
        if (i < 0) i = 0;
        if (i > source.count - 2) i = source.count - 2;
        const double w = s - i;
        out[j] = (1.0 - w) * field[i] + w * field[i + 1];
    }
    return out;
}

StackedState resample(const StackedState& state, const SpatialGrid& target) {
    if (state.grid == target) return state;
    const Eigen::VectorXd p = resample_field(state.p(), state.grid, target);
    const Eigen::VectorXd q = resample_field(state.q(), state.grid, target);
    return stack(p, q, target);
}

}  // namespace gpdphs
