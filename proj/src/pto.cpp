#include "arrmdp/pto.hpp"

#include <chrono>

namespace arrmdp {

double pt_total_reward(const PtMdp& pt, const Policy& policy, LinearSolverKind solver) {
    const std::vector<double> values = evaluate_ssp_values(pt, policy, solver);
    return values[static_cast<std::size_t>(pt.mdp.initial_state())];
}

PtoResult solve_pto(const ArrMdp& mdp, const PtoSolveConfig& config) {
    const auto start = std::chrono::steady_clock::now();

    const PtMdp pt = build_pt_mdp(mdp, config.horizon);

    SspConfig ssp;
    ssp.stop_threshold = config.pi_stop_threshold;
    ssp.max_iterations = config.max_pi_iterations;
    ssp.linear_solver = config.linear_solver;
    auto [pt_policy, report] = ssp_policy_iteration(pt, ssp);

    PtoResult out;
    out.policy = project_policy(pt, pt_policy);
    out.breakdown = arr_revenue(mdp, out.policy, config.linear_solver);

    out.report = std::move(report);
    out.report.rev_pt = out.report.objective_value / config.horizon;
    out.report.rev_arr = out.breakdown.rev_arr;
    out.report.objective_value = out.breakdown.rev_arr;
    out.report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

} // namespace arrmdp
