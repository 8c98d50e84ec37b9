#include "arrmdp/validate.hpp"

#include <cmath>

#include "arrmdp/stationary.hpp"

namespace arrmdp {

ValidationReport validate(const ArrMdp& mdp,
                          const std::vector<std::pair<std::string, Policy>>& probe_policies,
                          double epsilon) {
    ValidationReport report;
    report.epsilon = epsilon;

    mdp.for_each_state_action([&](StateId s, ActionId a, std::span<const Transition> row) {
        double sum = 0.0;
        for (const Transition& t : row) {
            sum += t.prob;
            if (std::abs(t.reward) > mdp.reward_bound() + 1e-12)
                report.bound_issues.push_back({s, a, t.to, t.reward, true});
            if (t.difficulty < 0.0 || t.difficulty > mdp.difficulty_bound() + 1e-12)
                report.bound_issues.push_back({s, a, t.to, t.difficulty, false});
        }
        if (std::abs(sum - 1.0) > report.row_sum_tolerance)
            report.row_sum_issues.push_back({s, a, sum});
    });

    const std::vector<bool> seen = reachable_states(mdp);
    for (StateId s = 0; s < mdp.num_states(); ++s) {
        if (!seen[static_cast<std::size_t>(s)]) report.unreachable.push_back(s);
    }

    // Probing the average difficulty only makes sense on a stochastic model.
    if (report.row_sum_issues.empty()) {
        for (const auto& [name, policy] : probe_policies) {
            ValidationReport::ProbeResult probe{name, 0.0, false};
            try {
                const InducedChain chain = induce_chain(mdp, policy);
                const StationaryDistribution mu = stationary_distribution(chain);
                for (StateId s = 0; s < chain.num_states; ++s)
                    probe.avg_difficulty +=
                        chain.expected_difficulty[static_cast<std::size_t>(s)] *
                        mu.mu[static_cast<std::size_t>(s)];
                probe.positive = probe.avg_difficulty > epsilon;
            } catch (const Error&) {
                probe.positive = false;
            }
            report.probes.push_back(std::move(probe));
        }
    }
    return report;
}

} // namespace arrmdp
