#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "gpdphs/simplex.hpp"

namespace gpdphs {

/// Squared-exponential hyperparameters. `lengthscales` holds one entry per
/// input dimension, or a single shared entry.
struct SEHyper {
    double sigma_f = 1.0;
    Eigen::VectorXd lengthscales;
    double sigma_n = 0.0;

    void validate(int input_dim) const;
    double lengthscale(int dim) const {
        return lengthscales.size() == 1 ? lengthscales[0] : lengthscales[dim];
    }
};

/// k(a, b) = sigma_f^2 exp(-sum_d (a_d - b_d)^2 / (2 phi_d^2))
double se_kernel(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                 const SEHyper& hyper);

/// K(X, X) + sigma_n^2 I with rows of `x` as inputs. OpenMP over row pairs.
Eigen::MatrixXd gram(const Eigen::MatrixXd& x, const SEHyper& hyper);

/// Serial reference for gram(), kept for testing.
Eigen::MatrixXd gram_serial(const Eigen::MatrixXd& x, const SEHyper& hyper);

/// Cross-covariance vector k(x*, X).
Eigen::VectorXd kernel_vector(const Eigen::MatrixXd& x,
                              const Eigen::VectorXd& xstar,
                              const SEHyper& hyper);

/// Trained scalar-output GP: inputs, targets, factorized Gram, weights.
struct GPPosterior {
    Eigen::MatrixXd inputs;   // M x d
    Eigen::VectorXd targets;  // M
    SEHyper hyper;
    Eigen::MatrixXd chol;     // lower factor of K + sigma_n^2 I (+ jitter)
    Eigen::VectorXd alpha;    // (K + sigma_n^2 I)^{-1} y
    double jitter = 0.0;

    bool trained() const { return alpha.size() > 0; }
};

GPPosterior fit_gp(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                   const SEHyper& hyper);

struct PosteriorValue {
    double mean = 0.0;
    double variance = 0.0;
};

PosteriorValue posterior(const GPPosterior& gp, const Eigen::VectorXd& xstar);

/// Negative log marginal likelihood of y under the SE prior.
double nlml(const SEHyper& hyper, const Eigen::MatrixXd& x,
            const Eigen::VectorXd& y);

/// Box bounds for (sigma_f, lengthscales..., sigma_n), all positive.
struct HyperBounds {
    SEHyper lower;
    SEHyper upper;
};

struct OptimizeReport {
    std::vector<std::vector<double>> traces;  // best-nlml trace per restart
    double best_nlml = 0.0;
    int failed_restarts = 0;
};

/// Multi-restart simplex search over log-parameters. Restart 0 starts from
/// `init`; the rest start log-uniform inside the bounds, seeded. Returns the
/// hyperparameters with the lowest nlml reached.
SEHyper optimize_hyper(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                       const SEHyper& init, const HyperBounds& bounds,
                       int restarts, std::uint64_t seed,
                       const SimplexOptions& opts = {},
                       OptimizeReport* report = nullptr);

}  // namespace gpdphs
