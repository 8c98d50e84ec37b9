#pragma once

#include <string>
#include <utility>
#include <vector>

#include "arrmdp/arr_mdp.hpp"

namespace arrmdp {

/// Report-only validation against the model assumptions: probability rows sum
/// to one, rewards and difficulties respect the declared bounds, all states
/// are reachable from the initial state, and each probe policy keeps a
/// positive average difficulty contribution per step.
struct ValidationReport {
    struct RowSumIssue {
        StateId state;
        ActionId action;
        double sum;  // the offending row sum
    };
    struct BoundIssue {
        StateId state;
        ActionId action;
        StateId to;
        double value;
        bool is_reward;  // false: difficulty bound violated
    };
    struct ProbeResult {
        std::string name;
        double avg_difficulty;  // stationary average difficulty per step
        bool positive;          // avg_difficulty > epsilon
    };

    std::vector<RowSumIssue> row_sum_issues;
    std::vector<BoundIssue> bound_issues;
    std::vector<StateId> unreachable;
    std::vector<ProbeResult> probes;
    double row_sum_tolerance = 1e-12;
    double epsilon = 1e-6;

    bool ok() const {
        if (!row_sum_issues.empty() || !bound_issues.empty() || !unreachable.empty()) return false;
        for (const ProbeResult& p : probes) {
            if (!p.positive) return false;
        }
        return true;
    }
};

/// Checks `mdp` and, for each named probe policy, the average difficulty per
/// step against `epsilon`. Callers decide whether a bad report is fatal.
ValidationReport validate(const ArrMdp& mdp,
                          const std::vector<std::pair<std::string, Policy>>& probe_policies = {},
                          double epsilon = 1e-6);

} // namespace arrmdp
