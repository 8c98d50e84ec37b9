#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "arrmdp/arr_mdp.hpp"
#include "arrmdp/pt_mdp.hpp"
#include "arrmdp/stationary.hpp"

namespace arrmdp {

/// Instrumented outcome of a dynamic-programming solve. Every policy
/// evaluation is one linear system, counted in `linear_solves` regardless of
/// the backend; that is the platform-independent cost metric the experiment
/// suite compares.
struct SolveReport {
    int policy_iterations = 0;
    int linear_solves = 0;
    double wall_time_s = 0.0;
    std::vector<double> final_values;
    double objective_value = 0.0;
    bool converged = false;

    // Filled by the PTO pipeline; untouched by the plain solvers.
    double rev_pt = 0.0;
    double rev_arr = 0.0;
};

struct SspConfig {
    double stop_threshold = 1e-5;
    int max_iterations = 200;
    LinearSolverKind linear_solver = LinearSolverKind::direct;
};

/// Exact expected values of a proper policy on a PT-MDP: V = R_pi + P_pi V
/// over non-terminal states, V(terminal) = 0. One linear solve.
/// Throws NonTerminatingError when some state cannot reach the terminal.
std::vector<double> evaluate_ssp_values(const PtMdp& pt, const Policy& policy,
                                        LinearSolverKind solver = LinearSolverKind::direct);

/// Howard policy iteration for the stochastic-shortest-path objective.
/// Improvement keeps the incumbent action when it is within `stop_threshold`
/// of the best improvement; otherwise it switches to the lowest action id
/// among the maximizers, so runs are deterministic across platforms.
std::pair<Policy, SolveReport> ssp_policy_iteration(const PtMdp& pt, const SspConfig& config,
                                                    const Policy* initial = nullptr);

/// Per-transition scalar reward used by the average-reward solver.
using ScalarReward = std::function<double(const Transition&)>;

struct AvgRewardConfig {
    double stop_threshold = 1e-5;
    int max_iterations = 200;
    LinearSolverKind linear_solver = LinearSolverKind::direct;
};

/// Howard policy iteration for the average-reward criterion on a unichain
/// model. Evaluation solves the gain/bias system with the bias pinned to zero
/// at the initial state (one linear solve per iteration); objective_value is
/// the optimal gain per step.
std::pair<Policy, SolveReport> avg_reward_policy_iteration(const ArrMdp& mdp,
                                                           const ScalarReward& reward,
                                                           const AvgRewardConfig& config,
                                                           const Policy* initial = nullptr);

/// Binary-search baseline: probes the parametrized scalar reward
/// R - rho * D, solving one average-reward MDP per probe, and narrows the
/// bracket on rho by the sign of the optimal gain.
struct OsmConfig {
    double epsilon = 1e-5;  // final bracket width on rho
    double pi_stop_threshold = 1e-5;
    int max_outer_iterations = 64;
    int max_inner_iterations = 200;
    double rho_lo = 0.0;
    double rho_hi = 1.0;
    LinearSolverKind linear_solver = LinearSolverKind::direct;
};

/// Returns the final probe's policy together with its exact reward ratio in
/// objective_value / rev_arr. linear_solves aggregates every inner
/// evaluation across all probes. Throws BracketError when the gain at rho_lo
/// is already negative.
std::pair<Policy, SolveReport> osm_solve(const ArrMdp& mdp, const OsmConfig& config);

/// Simulation estimate of the reward ratio: follows the induced chain from
/// the initial state for `steps` transitions and returns sum(R)/sum(D) with a
/// batch-means standard error. Deterministic for a fixed seed.
struct MonteCarloEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
};

MonteCarloEstimate monte_carlo_revenue(const ArrMdp& mdp, const Policy& policy,
                                       std::int64_t steps, std::uint64_t seed);

/// Lowest admissible action everywhere; the deterministic default start.
Policy default_policy(const ArrMdp& mdp);

} // namespace arrmdp
