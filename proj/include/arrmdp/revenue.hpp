#pragma once

#include "arrmdp/arr_mdp.hpp"
#include "arrmdp/stationary.hpp"

namespace arrmdp {

/// Exact long-run revenue of a policy: the stationary average reward per step
/// divided by the stationary average difficulty contribution per step.
struct RevenueBreakdown {
    double rev_arr = 0.0;
    double avg_reward_per_step = 0.0;
    double avg_difficulty_per_step = 0.0;
    StationaryDistribution mu;
};

RevenueBreakdown arr_revenue(const ArrMdp& mdp, const Policy& policy,
                             LinearSolverKind solver = LinearSolverKind::direct);

} // namespace arrmdp
