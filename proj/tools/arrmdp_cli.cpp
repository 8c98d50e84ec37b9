// Scratch harness; replaced by the real CLI once the solvers are validated.
#include <cstdio>

#include "arrmdp/bitcoin.hpp"
#include "arrmdp/pto.hpp"
#include "arrmdp/solvers.hpp"

int main() {
    using namespace arrmdp;
    bitcoin::Params params{0.4, 0.0, 95};
    const bitcoin::Model model = bitcoin::build(params);
    std::printf("states: %d entries: %zu\n", model.mdp.num_states(),
                model.mdp.num_transition_entries());

    const RevenueBreakdown honest = arr_revenue(model.mdp, bitcoin::honest_policy(model));
    std::printf("honest revenue: %.9f (expect 0.4)\n", honest.rev_arr);

    PtoSolveConfig config;
    config.horizon = 1e6;
    const PtoResult result = solve_pto(model.mdp, config);
    std::printf("pto rev_arr: %.6f (expect 0.48866)  rev_pt: %.6f  iters: %d solves: %d  %.2fs\n",
                result.report.rev_arr, result.report.rev_pt, result.report.policy_iterations,
                result.report.linear_solves, result.report.wall_time_s);
    return 0;
}
