#include "gpdphs/gp.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "gpdphs/errors.hpp"
#include "gpdphs/linalg.hpp"

namespace gpdphs {

namespace {
constexpr double kLog2Pi = 1.8378770664093454836;

double sq_scaled_dist(const Eigen::MatrixXd& x, int i, int j,
                      const SEHyper& hyper) {
    double s = 0.0;
    for (int d = 0; d < x.cols(); ++d) {
        const double r = (x(i, d) - x(j, d)) / hyper.lengthscale(d);
        s += r * r;
    }
    return s;
}
}  // namespace

void SEHyper::validate(int input_dim) const {
    if (!(sigma_f > 0.0)) throw InvalidArgument("SEHyper: sigma_f must be positive");
    if (sigma_n < 0.0) throw InvalidArgument("SEHyper: sigma_n must be non-negative");
    if (lengthscales.size() != 1 && lengthscales.size() != input_dim)
        throw InvalidArgument("SEHyper: lengthscale count must be 1 or input dim");
    if ((lengthscales.array() <= 0.0).any())
        throw InvalidArgument("SEHyper: lengthscales must be positive");
}

double se_kernel(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                 const SEHyper& hyper) {
    if (a.size() != b.size())
        throw InvalidArgument("se_kernel: input dimension mismatch");
    hyper.validate(static_cast<int>(a.size()));
    double s = 0.0;
    for (int d = 0; d < a.size(); ++d) {
        const double r = (a[d] - b[d]) / hyper.lengthscale(d);
        s += r * r;
    }
    return hyper.sigma_f * hyper.sigma_f * std::exp(-0.5 * s);
}

Eigen::MatrixXd gram_serial(const Eigen::MatrixXd& x, const SEHyper& hyper) {
    const int m = static_cast<int>(x.rows());
    if (m < 1) throw InvalidArgument("gram: need at least one input");
    if (!x.allFinite()) throw InvalidArgument("gram: non-finite inputs");
    hyper.validate(static_cast<int>(x.cols()));

    const double sf2 = hyper.sigma_f * hyper.sigma_f;
    Eigen::MatrixXd k(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j <= i; ++j) {
            const double v = sf2 * std::exp(-0.5 * sq_scaled_dist(x, i, j, hyper));
            k(i, j) = v;
            k(j, i) = v;
        }
        k(i, i) = sf2 + hyper.sigma_n * hyper.sigma_n;
    }
    return k;
}

Eigen::MatrixXd gram(const Eigen::MatrixXd& x, const SEHyper& hyper) {
    const int m = static_cast<int>(x.rows());
    if (m < 1) throw InvalidArgument("gram: need at least one input");
    if (!x.allFinite()) throw InvalidArgument("gram: non-finite inputs");
    hyper.validate(static_cast<int>(x.cols()));

    const double sf2 = hyper.sigma_f * hyper.sigma_f;
    Eigen::MatrixXd k(m, m);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < i; ++j) {
            k(i, j) = sf2 * std::exp(-0.5 * sq_scaled_dist(x, i, j, hyper));
        }
        k(i, i) = sf2 + hyper.sigma_n * hyper.sigma_n;
    }
    // mirror the lower triangle
#pragma omp parallel for schedule(static)
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) k(i, j) = k(j, i);
    return k;
}

Eigen::VectorXd kernel_vector(const Eigen::MatrixXd& x,
                              const Eigen::VectorXd& xstar,
                              const SEHyper& hyper) {
    if (xstar.size() != x.cols())
        throw InvalidArgument("kernel_vector: query dimension mismatch");
    const double sf2 = hyper.sigma_f * hyper.sigma_f;
    Eigen::VectorXd k(x.rows());
    for (int i = 0; i < x.rows(); ++i) {
        double s = 0.0;
        for (int d = 0; d < x.cols(); ++d) {
            const double r = (xstar[d] - x(i, d)) / hyper.lengthscale(d);
            s += r * r;
        }
        k[i] = sf2 * std::exp(-0.5 * s);
    }
    return k;
}

GPPosterior fit_gp(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                   const SEHyper& hyper) {
    if (x.rows() != y.size())
        throw InvalidArgument("fit_gp: input/target count mismatch");
    GPPosterior gp;
    gp.inputs = x;
    gp.targets = y;
    gp.hyper = hyper;
    const linalg::CholeskyResult c = linalg::cholesky_jittered(gram(x, hyper));
    gp.chol = c.factor;
    gp.jitter = c.jitter;
    gp.alpha = linalg::chol_apply_inverse(gp.chol, y);
    return gp;
}

PosteriorValue posterior(const GPPosterior& gp, const Eigen::VectorXd& xstar) {
    if (!gp.trained()) throw InvalidState("posterior: model is not trained");
    if (xstar.size() != gp.inputs.cols())
        throw InvalidArgument("posterior: query dimension mismatch");

    const Eigen::VectorXd ks = kernel_vector(gp.inputs, xstar, gp.hyper);
    PosteriorValue out;
    out.mean = ks.dot(gp.alpha);
    const Eigen::VectorXd v = linalg::solve_lower(gp.chol, ks);
    double var = gp.hyper.sigma_f * gp.hyper.sigma_f - v.squaredNorm();
    if (var < 0.0) var = 0.0;
    out.variance = var;
    return out;
}

double nlml(const SEHyper& hyper, const Eigen::MatrixXd& x,
            const Eigen::VectorXd& y) {
    const Eigen::MatrixXd k = gram(x, hyper);
    const linalg::CholeskyResult c = linalg::cholesky_jittered(k);
    const Eigen::VectorXd alpha = linalg::chol_apply_inverse(c.factor, y);
    const double m = static_cast<double>(y.size());
    return 0.5 * y.dot(alpha) + c.factor.diagonal().array().log().sum() +
           0.5 * m * kLog2Pi;
}

namespace {

Eigen::VectorXd pack_log(const SEHyper& h) {
    Eigen::VectorXd v(h.lengthscales.size() + 2);
    v[0] = std::log(h.sigma_f);
    for (int i = 0; i < h.lengthscales.size(); ++i)
        v[i + 1] = std::log(h.lengthscales[i]);
    v[v.size() - 1] = std::log(std::max(h.sigma_n, 1e-300));
    return v;
}

SEHyper unpack_log(const Eigen::VectorXd& v) {
    SEHyper h;
    h.sigma_f = std::exp(v[0]);
    h.lengthscales.resize(v.size() - 2);
    for (int i = 0; i < h.lengthscales.size(); ++i)
        h.lengthscales[i] = std::exp(v[i + 1]);
    h.sigma_n = std::exp(v[v.size() - 1]);
    return h;
}

}  // namespace

SEHyper optimize_hyper(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                       const SEHyper& init, const HyperBounds& bounds,
                       int restarts, std::uint64_t seed,
                       const SimplexOptions& opts, OptimizeReport* report) {
    if (restarts < 1) throw InvalidArgument("optimize_hyper: restarts must be >= 1");
    init.validate(static_cast<int>(x.cols()));
    bounds.lower.validate(static_cast<int>(x.cols()));
    bounds.upper.validate(static_cast<int>(x.cols()));
    if (!(bounds.lower.sigma_n > 0.0))
        throw InvalidArgument("optimize_hyper: sigma_n lower bound must be positive");

    const Eigen::VectorXd lo = pack_log(bounds.lower);
    const Eigen::VectorXd hi = pack_log(bounds.upper);
    if (((hi - lo).array() <= 0.0).any())
        throw InvalidArgument("optimize_hyper: bounds must be positive intervals");

    auto objective = [&](const Eigen::VectorXd& v) -> double {
        try {
            return nlml(unpack_log(v), x, y);
        } catch (const NotPositiveDefinite&) {
            return std::numeric_limits<double>::infinity();
        }
    };

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    bool have_best = false;
    Eigen::VectorXd best_x;
    double best_f = std::numeric_limits<double>::infinity();
    int failed = 0;

    for (int r = 0; r < restarts; ++r) {
        Eigen::VectorXd start(lo.size());
        if (r == 0) {
            start = pack_log(init).cwiseMax(lo).cwiseMin(hi);
        } else {
            for (int i = 0; i < lo.size(); ++i)
                start[i] = lo[i] + unit(rng) * (hi[i] - lo[i]);
        }
        const SimplexResult res = nelder_mead(objective, start, lo, hi, opts);
        if (report) report->traces.push_back(res.trace);
        if (!std::isfinite(res.value)) {
            ++failed;
            continue;
        }
        if (!have_best || res.value < best_f) {
            have_best = true;
            best_f = res.value;
            best_x = res.x;
        }
    }

    if (report) {
        report->best_nlml = best_f;
        report->failed_restarts = failed;
    }
    if (!have_best)
        throw OptimizationFailed("optimize_hyper: every restart failed");
    return unpack_log(best_x);
}

}  // namespace gpdphs
