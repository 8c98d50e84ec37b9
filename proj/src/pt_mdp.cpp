#include "arrmdp/pt_mdp.hpp"

#include <cmath>
#include <iostream>

namespace arrmdp {

PtMdp build_pt_mdp(const ArrMdp& mdp, double horizon) {
    if (!(horizon > mdp.difficulty_bound()))
        throw HorizonTooSmallError("horizon " + std::to_string(horizon) +
                                   " must exceed the difficulty bound " +
                                   std::to_string(mdp.difficulty_bound()));
    if (horizon < 100.0 * mdp.difficulty_bound())
        std::cerr << "warning: horizon " << horizon << " is below 100 * difficulty bound "
                  << mdp.difficulty_bound() << "; the horizon approximation degrades\n";

    const StateId terminal = mdp.num_states();
    ArrMdpBuilder builder(mdp.num_states() + 1, mdp.initial_state(), mdp.reward_bound(),
                          mdp.difficulty_bound());

    const double log_survive = std::log1p(-1.0 / horizon);
    mdp.for_each_state_action([&](StateId s, ActionId a, std::span<const Transition> row) {
        for (const Transition& t : row) {
            if (t.difficulty == 0.0) {
                builder.add(s, a, t.to, t.prob, t.reward, t.difficulty);
                continue;
            }
            const double survive = std::exp(t.difficulty * log_survive);
            const double stop = -std::expm1(t.difficulty * log_survive);
            if (survive > 0.0) builder.add(s, a, t.to, t.prob * survive, t.reward, t.difficulty);
            if (stop > 0.0) builder.add(s, a, terminal, t.prob * stop, t.reward, t.difficulty);
        }
    });
    builder.add(terminal, 0, terminal, 1.0, 0.0, 0.0);

    PtMdp pt;
    pt.mdp = std::move(builder).build();
    pt.horizon = horizon;
    pt.terminal = terminal;
    return pt;
}

Policy project_policy(const PtMdp& pt, const Policy& pt_policy) {
    if (pt_policy.size() != static_cast<std::size_t>(pt.mdp.num_states()))
        throw InvalidPolicyError("policy does not cover the PT-MDP state space");
    std::vector<ActionId> choice(pt_policy.choices().begin(),
                                 pt_policy.choices().end() - 1);
    return Policy(std::move(choice));
}

} // namespace arrmdp
