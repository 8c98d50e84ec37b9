#pragma once

#include "arrmdp/arr_mdp.hpp"
#include "arrmdp/pt_mdp.hpp"
#include "arrmdp/revenue.hpp"
#include "arrmdp/solvers.hpp"

namespace arrmdp {

struct PtoSolveConfig {
    double horizon = 1e6;
    double pi_stop_threshold = 1e-5;
    int max_pi_iterations = 200;
    LinearSolverKind linear_solver = LinearSolverKind::direct;
};

struct PtoResult {
    Policy policy;  // on the source state space
    SolveReport report;
    RevenueBreakdown breakdown;
};

/// End-to-end probabilistic-termination solve: transform the model for the
/// configured horizon, optimize the transformed model as a stochastic
/// shortest path problem, map the policy back onto the source states, and
/// evaluate its exact reward ratio there.
///
/// report.rev_pt holds the transformed objective scaled by 1/H (converging to
/// rev_arr as the horizon grows); report.objective_value and rev_arr hold the
/// exact reward ratio of the returned policy on the source model.
PtoResult solve_pto(const ArrMdp& mdp, const PtoSolveConfig& config);

/// Exact expected cumulative reward from the initial state until absorption,
/// reward on the terminating step included. One linear solve.
double pt_total_reward(const PtMdp& pt, const Policy& policy,
                       LinearSolverKind solver = LinearSolverKind::direct);

} // namespace arrmdp
