#pragma once

#include <stdexcept>
#include <string>

namespace gpdphs {

/// Precondition violation on a public entry point.
struct InvalidArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Operation called on an object that is not in a usable state
/// (e.g. prediction from an untrained model).
struct InvalidState : std::logic_error {
    using std::logic_error::logic_error;
};

/// Cholesky factorization failed even after the full jitter schedule.
struct NotPositiveDefinite : std::runtime_error {
    double jitter_attempted;
    explicit NotPositiveDefinite(const std::string& msg, double jitter)
        : std::runtime_error(msg), jitter_attempted(jitter) {}
};

/// Time integration produced a non-finite state.
struct NumericalBlowup : std::runtime_error {
    double last_good_time;
    explicit NumericalBlowup(const std::string& msg, double t)
        : std::runtime_error(msg), last_good_time(t) {}
};

/// Hyperparameter search failed on every restart.
struct OptimizationFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Corrupt, truncated, or incompatible model/config file.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Filesystem-level failure (missing input, unwritable directory).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace gpdphs
