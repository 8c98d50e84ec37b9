#pragma once

#include <vector>

#include "arrmdp/arr_mdp.hpp"

namespace arrmdp {

/// Probability vector over the states of an induced chain. States outside the
/// recurrent class reachable from the chain's initial state carry zero mass.
struct StationaryDistribution {
    std::vector<double> mu;
    double residual = 0.0;  // ||mu^T P - mu^T||_inf at return
};

enum class LinearSolverKind {
    direct,     // sparse LU factorization
    iterative,  // damped power iteration, for chains too large to factorize
};

/// Solves mu^T P = mu^T for the chain restricted to the recurrent class
/// reachable from its initial state; transient and unreachable states get
/// mu = 0. Throws SolverError if the residual cannot be driven below 1e-9 or
/// if the reachable part of the chain has more than one recurrent class.
StationaryDistribution stationary_distribution(const InducedChain& chain,
                                               LinearSolverKind solver = LinearSolverKind::direct);

} // namespace arrmdp
