#pragma once

#include <stdexcept>
#include <string>

namespace bohm {

/// Invalid or inconsistent run configuration (bad fields, mixed unit systems,
/// unknown config keys). Maps to CLI exit code 2.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Numerical failure during integration or evaluation (NaN, divergence,
/// broken invariant). Maps to CLI exit code 3.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Guidance velocity requested where the probability density is below the
/// node floor; the velocity is undefined there.
struct NodeRegionError : NumericalError {
    using NumericalError::NumericalError;
};

/// A delayed lookup asked for a time the stored trajectory does not cover.
struct InsufficientHistoryError : NumericalError {
    using NumericalError::NumericalError;
};

/// Failure writing output artifacts. Maps to CLI exit code 4.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace bohm
