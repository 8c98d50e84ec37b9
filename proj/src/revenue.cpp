#include "arrmdp/revenue.hpp"

namespace arrmdp {

RevenueBreakdown arr_revenue(const ArrMdp& mdp, const Policy& policy, LinearSolverKind solver) {
    const InducedChain chain = induce_chain(mdp, policy);

    RevenueBreakdown out;
    out.mu = stationary_distribution(chain, solver);
    for (StateId s = 0; s < chain.num_states; ++s) {
        const double m = out.mu.mu[static_cast<std::size_t>(s)];
        out.avg_reward_per_step += chain.expected_reward[static_cast<std::size_t>(s)] * m;
        out.avg_difficulty_per_step += chain.expected_difficulty[static_cast<std::size_t>(s)] * m;
    }
    if (out.avg_difficulty_per_step <= 1e-9)
        throw ZeroDifficultyError("average difficulty per step is not positive; the reward "
                                  "ratio is undefined for this policy");
    out.rev_arr = out.avg_reward_per_step / out.avg_difficulty_per_step;
    return out;
}

} // namespace arrmdp
