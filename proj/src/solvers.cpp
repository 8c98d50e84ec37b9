#include "arrmdp/solvers.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <limits>

#include "arrmdp/revenue.hpp"
#include "arrmdp/rng.hpp"

namespace arrmdp {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

Eigen::VectorXd solve_sparse(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& b,
                             LinearSolverKind kind, const char* what) {
    if (kind == LinearSolverKind::direct) {
        Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
        lu.analyzePattern(A);
        lu.factorize(A);
        if (lu.info() != Eigen::Success)
            throw SolverError(std::string(what) + ": singular system in sparse factorization");
        Eigen::VectorXd x = lu.solve(b);
        if (lu.info() != Eigen::Success)
            throw SolverError(std::string(what) + ": sparse solve failed");
        return x;
    }
    Eigen::BiCGSTAB<Eigen::SparseMatrix<double>, Eigen::IncompleteLUT<double>> solver;
    solver.setTolerance(1e-13);
    solver.setMaxIterations(20000);
    solver.compute(A);
    if (solver.info() != Eigen::Success)
        throw SolverError(std::string(what) + ": iterative solver setup failed");
    Eigen::VectorXd x = solver.solve(b);
    if (solver.info() != Eigen::Success)
        throw SolverError(std::string(what) + ": iterative solve did not converge");
    return x;
}

// True iff every state reaches the terminal state with positive probability
// under the policy. A policy failing this has infinite values somewhere.
bool all_states_reach_terminal(const PtMdp& pt, const Policy& policy) {
    const StateId n = pt.mdp.num_states();
    std::vector<std::vector<StateId>> reverse(static_cast<std::size_t>(n));
    for (StateId s = 0; s < n; ++s) {
        for (const Transition& t : pt.mdp.transitions(s, policy(s)))
            reverse[static_cast<std::size_t>(t.to)].push_back(s);
    }
    std::vector<bool> reaches(static_cast<std::size_t>(n), false);
    std::deque<StateId> queue;
    reaches[static_cast<std::size_t>(pt.terminal)] = true;
    queue.push_back(pt.terminal);
    while (!queue.empty()) {
        const StateId s = queue.front();
        queue.pop_front();
        for (const StateId p : reverse[static_cast<std::size_t>(s)]) {
            if (!reaches[static_cast<std::size_t>(p)]) {
                reaches[static_cast<std::size_t>(p)] = true;
                queue.push_back(p);
            }
        }
    }
    return std::all_of(reaches.begin(), reaches.end(), [](bool b) { return b; });
}

} // namespace

Policy default_policy(const ArrMdp& mdp) {
    std::vector<ActionId> choice(static_cast<std::size_t>(mdp.num_states()));
    for (StateId s = 0; s < mdp.num_states(); ++s)
        choice[static_cast<std::size_t>(s)] = mdp.first_action(s);
    return Policy(std::move(choice));
}

std::vector<double> evaluate_ssp_values(const PtMdp& pt, const Policy& policy,
                                        LinearSolverKind solver) {
    policy.validate_for(pt.mdp);
    if (!all_states_reach_terminal(pt, policy))
        throw NonTerminatingError(
            "policy has zero termination probability from some state; the source model "
            "violates the positive-difficulty assumption");

    const StateId n = pt.num_source_states();
    std::vector<Eigen::Triplet<double>> trips;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    for (StateId s = 0; s < n; ++s) {
        trips.emplace_back(s, s, 1.0);
        for (const Transition& t : pt.mdp.transitions(s, policy(s))) {
            rhs[s] += t.prob * t.reward;
            if (t.to != pt.terminal) trips.emplace_back(s, t.to, -t.prob);
        }
    }
    Eigen::SparseMatrix<double> A(n, n);
    A.setFromTriplets(trips.begin(), trips.end());
    A.makeCompressed();

    const Eigen::VectorXd v = solve_sparse(A, rhs, solver, "ssp evaluation");
    std::vector<double> values(static_cast<std::size_t>(n) + 1, 0.0);
    for (StateId s = 0; s < n; ++s) values[static_cast<std::size_t>(s)] = v[s];
    return values;  // terminal value stays 0
}

std::pair<Policy, SolveReport> ssp_policy_iteration(const PtMdp& pt, const SspConfig& config,
                                                    const Policy* initial) {
    const auto start = Clock::now();
    if (!(config.stop_threshold > 0.0)) throw InvalidParamsError("stop_threshold must be > 0");

    Policy policy = initial ? *initial : default_policy(pt.mdp);
    policy.validate_for(pt.mdp);

    SolveReport report;
    std::vector<double> values;
    const StateId n = pt.num_source_states();

    for (int iter = 0; iter < config.max_iterations; ++iter) {
        values = evaluate_ssp_values(pt, policy, config.linear_solver);
        ++report.linear_solves;
        ++report.policy_iterations;

        bool changed = false;
        for (StateId s = 0; s < n; ++s) {
            const ActionId incumbent = policy(s);
            double q_incumbent = 0.0;
            double q_best = -std::numeric_limits<double>::infinity();
            ActionId a_best = incumbent;
            for (ActionId a : pt.mdp.actions_of(s)) {
                double q = 0.0;
                for (const Transition& t : pt.mdp.transitions(s, a))
                    q += t.prob * (t.reward + values[static_cast<std::size_t>(t.to)]);
                if (a == incumbent) q_incumbent = q;
                if (q > q_best) {
                    q_best = q;
                    a_best = a;
                }
            }
            if (q_incumbent < q_best - config.stop_threshold) {
                policy[s] = a_best;
                changed = true;
            }
        }
        if (!changed) {
            report.converged = true;
            break;
        }
    }

    report.final_values = values;
    report.objective_value = values[static_cast<std::size_t>(pt.mdp.initial_state())];
    report.wall_time_s = seconds_since(start);
    return {std::move(policy), std::move(report)};
}

namespace {

// Unichain gain/bias evaluation with the bias pinned to zero at the initial
// state. Unknown vector y: y[init] holds the gain, y[i] the bias elsewhere.
// Row i encodes  g + b(i) - sum_j P(i,j) b(j) = Rhat(i).
std::pair<double, std::vector<double>> evaluate_gain_bias(const ArrMdp& mdp,
                                                          const ScalarReward& reward,
                                                          const Policy& policy,
                                                          LinearSolverKind solver) {
    const StateId n = mdp.num_states();
    const StateId init = mdp.initial_state();
    std::vector<Eigen::Triplet<double>> trips;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    for (StateId s = 0; s < n; ++s) {
        trips.emplace_back(s, init, 1.0);  // gain column
        if (s != init) trips.emplace_back(s, s, 1.0);
        for (const Transition& t : mdp.transitions(s, policy(s))) {
            rhs[s] += t.prob * reward(t);
            if (t.to != init) trips.emplace_back(s, t.to, -t.prob);
        }
    }
    Eigen::SparseMatrix<double> A(n, n);
    A.setFromTriplets(trips.begin(), trips.end());
    A.makeCompressed();

    const Eigen::VectorXd y = solve_sparse(A, rhs, solver, "average-reward evaluation");
    std::vector<double> bias(static_cast<std::size_t>(n));
    for (StateId s = 0; s < n; ++s) bias[static_cast<std::size_t>(s)] = y[s];
    const double gain = bias[static_cast<std::size_t>(init)];
    bias[static_cast<std::size_t>(init)] = 0.0;
    return {gain, std::move(bias)};
}

} // namespace

std::pair<Policy, SolveReport> avg_reward_policy_iteration(const ArrMdp& mdp,
                                                           const ScalarReward& reward,
                                                           const AvgRewardConfig& config,
                                                           const Policy* initial) {
    const auto start = Clock::now();
    if (!(config.stop_threshold > 0.0)) throw InvalidParamsError("stop_threshold must be > 0");

    Policy policy = initial ? *initial : default_policy(mdp);
    policy.validate_for(mdp);

    SolveReport report;
    double gain = 0.0;
    std::vector<double> bias;

    for (int iter = 0; iter < config.max_iterations; ++iter) {
        std::tie(gain, bias) = evaluate_gain_bias(mdp, reward, policy, config.linear_solver);
        ++report.linear_solves;
        ++report.policy_iterations;

        bool changed = false;
        for (StateId s = 0; s < mdp.num_states(); ++s) {
            const ActionId incumbent = policy(s);
            double q_incumbent = 0.0;
            double q_best = -std::numeric_limits<double>::infinity();
            ActionId a_best = incumbent;
            for (ActionId a : mdp.actions_of(s)) {
                double q = 0.0;
                for (const Transition& t : mdp.transitions(s, a))
                    q += t.prob * (reward(t) + bias[static_cast<std::size_t>(t.to)]);
                if (a == incumbent) q_incumbent = q;
                if (q > q_best) {
                    q_best = q;
                    a_best = a;
                }
            }
            if (q_incumbent < q_best - config.stop_threshold) {
                policy[s] = a_best;
                changed = true;
            }
        }
        if (!changed) {
            report.converged = true;
            break;
        }
    }

    report.final_values = bias;
    report.objective_value = gain;
    report.wall_time_s = seconds_since(start);
    return {std::move(policy), std::move(report)};
}

std::pair<Policy, SolveReport> osm_solve(const ArrMdp& mdp, const OsmConfig& config) {
    const auto start = Clock::now();
    if (!(config.epsilon > 0.0)) throw InvalidParamsError("epsilon must be > 0");
    if (!(config.rho_lo < config.rho_hi)) throw InvalidParamsError("rho bracket must be ordered");

    AvgRewardConfig inner;
    inner.stop_threshold = config.pi_stop_threshold;
    inner.max_iterations = config.max_inner_iterations;
    inner.linear_solver = config.linear_solver;

    SolveReport total;
    bool all_converged = true;

    const auto probe = [&](double rho) {
        const ScalarReward reward = [rho](const Transition& t) {
            return t.reward - rho * t.difficulty;
        };
        auto [policy, rep] = avg_reward_policy_iteration(mdp, reward, inner);
        total.linear_solves += rep.linear_solves;
        total.policy_iterations += rep.policy_iterations;
        all_converged = all_converged && rep.converged;
        return std::make_pair(std::move(policy), rep.objective_value);
    };

    double lo = config.rho_lo;
    double hi = config.rho_hi;

    auto [best_policy, gain_lo] = probe(lo);
    if (gain_lo < 0.0)
        throw BracketError("optimal gain at rho = " + std::to_string(lo) +
                           " is negative; the ratio objective lies below the bracket");

    int outer = 0;
    while (hi - lo > config.epsilon && outer < config.max_outer_iterations) {
        const double mid = 0.5 * (lo + hi);
        auto [policy, gain] = probe(mid);
        best_policy = std::move(policy);
        if (gain > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        ++outer;
    }

    const RevenueBreakdown breakdown = arr_revenue(mdp, best_policy, config.linear_solver);
    total.objective_value = breakdown.rev_arr;
    total.rev_arr = breakdown.rev_arr;
    total.converged = all_converged && (hi - lo <= config.epsilon);
    total.wall_time_s = seconds_since(start);
    return {std::move(best_policy), std::move(total)};
}

MonteCarloEstimate monte_carlo_revenue(const ArrMdp& mdp, const Policy& policy,
                                       std::int64_t steps, std::uint64_t seed) {
    if (steps < 10000) throw InvalidParamsError("monte_carlo_revenue needs at least 1e4 steps");
    policy.validate_for(mdp);

    Rng rng(seed);
    const int batches = 32;
    const std::int64_t batch_len = steps / batches;

    double total_r = 0.0;
    double total_d = 0.0;
    std::vector<double> batch_ratios;
    batch_ratios.reserve(batches);

    StateId s = mdp.initial_state();
    double batch_r = 0.0;
    double batch_d = 0.0;
    std::int64_t in_batch = 0;

    for (std::int64_t step = 0; step < steps; ++step) {
        const auto row = mdp.transitions(s, policy(s));
        const double u = rng.next_unit();
        double acc = 0.0;
        const Transition* chosen = &row.back();
        for (const Transition& t : row) {
            acc += t.prob;
            if (u < acc) {
                chosen = &t;
                break;
            }
        }
        batch_r += chosen->reward;
        batch_d += chosen->difficulty;
        s = chosen->to;

        if (++in_batch == batch_len) {
            total_r += batch_r;
            total_d += batch_d;
            if (batch_d > 0.0) batch_ratios.push_back(batch_r / batch_d);
            batch_r = batch_d = 0.0;
            in_batch = 0;
        }
    }
    total_r += batch_r;
    total_d += batch_d;

    if (total_d <= 0.0)
        throw ZeroDifficultyError("simulation accumulated zero difficulty; the model violates "
                                  "the positive-difficulty assumption under this policy");

    MonteCarloEstimate out;
    out.estimate = total_r / total_d;
    if (batch_ratios.size() >= 2) {
        double mean = 0.0;
        for (double r : batch_ratios) mean += r;
        mean /= static_cast<double>(batch_ratios.size());
        double var = 0.0;
        for (double r : batch_ratios) var += (r - mean) * (r - mean);
        var /= static_cast<double>(batch_ratios.size() - 1);
        out.std_error = std::sqrt(var / static_cast<double>(batch_ratios.size()));
    }
    return out;
}

} // namespace arrmdp
