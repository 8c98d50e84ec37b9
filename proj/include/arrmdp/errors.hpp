#pragma once

#include <stdexcept>
#include <string>

namespace arrmdp {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A policy selects an action that is not admissible in some state.
struct InvalidPolicyError : Error {
    using Error::Error;
};

/// Model builder was given parameters outside their documented domain.
struct InvalidParamsError : Error {
    using Error::Error;
};

/// Requested horizon does not exceed the per-transition difficulty bound.
struct HorizonTooSmallError : Error {
    using Error::Error;
};

/// A policy has zero probability of ever reaching the terminal state.
struct NonTerminatingError : Error {
    using Error::Error;
};

/// Linear system could not be solved to the required residual.
struct SolverError : Error {
    using Error::Error;
};

/// Average difficulty per step vanished; the reward ratio is undefined.
struct ZeroDifficultyError : Error {
    using Error::Error;
};

/// A bracketing search was started from an invalid bracket.
struct BracketError : Error {
    using Error::Error;
};

} // namespace arrmdp
