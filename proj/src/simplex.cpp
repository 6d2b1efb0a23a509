#include "gpdphs/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gpdphs/errors.hpp"

namespace gpdphs {

namespace {

double guarded(const std::function<double(const Eigen::VectorXd&)>& f,
               const Eigen::VectorXd& x) {
    const double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
}

Eigen::VectorXd clamp_box(Eigen::VectorXd x, const Eigen::VectorXd& lo,
                          const Eigen::VectorXd& hi) {
    return x.cwiseMax(lo).cwiseMin(hi);
}

}  // namespace

SimplexResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                          const Eigen::VectorXd& start,
                          const Eigen::VectorXd& lower,
                          const Eigen::VectorXd& upper,
                          const SimplexOptions& opts) {
    const int n = static_cast<int>(start.size());
    if (n == 0) throw InvalidArgument("nelder_mead: empty parameter vector");
    if (lower.size() != n || upper.size() != n)
        throw InvalidArgument("nelder_mead: bound size mismatch");
    if (((upper - lower).array() <= 0.0).any())
        throw InvalidArgument("nelder_mead: bounds must form positive intervals");

    std::vector<Eigen::VectorXd> verts(n + 1);
    std::vector<double> vals(n + 1);
    verts[0] = clamp_box(start, lower, upper);
    vals[0] = guarded(f, verts[0]);
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXd v = verts[0];
        double step = opts.initial_step;
        // step toward the interior when close to the upper bound
        if (v[i] + step > upper[i]) step = -step;
        v[i] = std::clamp(v[i] + step, lower[i], upper[i]);
        if (v[i] == verts[0][i]) v[i] = 0.5 * (lower[i] + upper[i]);
        verts[i + 1] = v;
        vals[i + 1] = guarded(f, v);
    }

    SimplexResult res;
    std::vector<int> order(n + 1);

    auto sort_simplex = [&] {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return vals[a] < vals[b]; });
        std::vector<Eigen::VectorXd> nv(n + 1);
        std::vector<double> nf(n + 1);
        for (int i = 0; i <= n; ++i) {
            nv[i] = verts[order[i]];
            nf[i] = vals[order[i]];
        }
        verts.swap(nv);
        vals.swap(nf);
    };

    sort_simplex();

    int iter = 0;
    for (; iter < opts.max_iter; ++iter) {
        // convergence: relative value spread and simplex diameter
        const double spread = vals[n] - vals[0];
        double diam = 0.0;
        for (int i = 1; i <= n; ++i)
            diam = std::max(diam, (verts[i] - verts[0]).lpNorm<Eigen::Infinity>());
        if (std::isfinite(vals[0]) &&
            spread <= opts.f_tol * (1.0 + std::abs(vals[0])) &&
            diam <= opts.x_tol) {
            res.converged = true;
            break;
        }

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (int i = 0; i < n; ++i) centroid += verts[i];
        centroid /= n;

        const Eigen::VectorXd reflect =
            clamp_box(centroid + (centroid - verts[n]), lower, upper);
        const double fr = guarded(f, reflect);

        if (fr < vals[0]) {
            const Eigen::VectorXd expand =
                clamp_box(centroid + 2.0 * (centroid - verts[n]), lower, upper);
            const double fe = guarded(f, expand);
            if (fe < fr) {
                verts[n] = expand;
                vals[n] = fe;
            } else {
                verts[n] = reflect;
                vals[n] = fr;
            }
        } else if (fr < vals[n - 1]) {
            verts[n] = reflect;
            vals[n] = fr;
        } else {
            const bool outside = fr < vals[n];
            const Eigen::VectorXd base = outside ? reflect : verts[n];
            const Eigen::VectorXd contract =
                clamp_box(centroid + 0.5 * (base - centroid), lower, upper);
            const double fc = guarded(f, contract);
            if (fc < std::min(fr, vals[n])) {
                verts[n] = contract;
                vals[n] = fc;
            } else {
                // shrink toward the best vertex
                for (int i = 1; i <= n; ++i) {
                    verts[i] = clamp_box(
                        verts[0] + 0.5 * (verts[i] - verts[0]), lower, upper);
                    vals[i] = guarded(f, verts[i]);
                }
            }
        }

        sort_simplex();
        res.trace.push_back(vals[0]);
    }

    res.x = verts[0];
    res.value = vals[0];
    res.iterations = iter;
    return res;
}

}  // namespace gpdphs
