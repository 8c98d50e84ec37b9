#pragma once

#include "arrmdp/arr_mdp.hpp"

namespace arrmdp {

/// Probabilistically terminating companion of an ArrMdp.
///
/// Shares the source's state space plus one absorbing terminal state. Every
/// source entry (i, a, j, p, r, d) becomes a survive edge with probability
/// p * (1 - 1/H)^d and, when d > 0, a terminate edge into the terminal state
/// with the complementary mass p * (1 - (1 - 1/H)^d). Both edges keep the full
/// transition reward, so the objective sums rewards through the terminating
/// step inclusive. Difficulty values are carried over unchanged.
struct PtMdp {
    ArrMdp mdp;          // states 0..n-1 from the source, state n is terminal
    double horizon = 0;  // expected total difficulty until termination
    StateId terminal = 0;

    StateId num_source_states() const { return mdp.num_states() - 1; }
};

/// Builds the PT-MDP for expected horizon `H`.
///
/// Requires H > mdp.difficulty_bound(); warns on stderr when H is below 100x
/// the bound, where the horizon approximation is poor.
PtMdp build_pt_mdp(const ArrMdp& mdp, double horizon);

/// Restricts a PT-MDP policy to the source state space (drops the terminal
/// state's entry).
Policy project_policy(const PtMdp& pt, const Policy& pt_policy);

} // namespace arrmdp
