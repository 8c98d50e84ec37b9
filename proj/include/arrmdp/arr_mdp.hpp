#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "arrmdp/errors.hpp"

namespace arrmdp {

using StateId = std::int32_t;
using ActionId = std::int32_t;

/// One sparse transition: probability of landing in `to`, together with the
/// reward earned by the agent and the difficulty contribution of the whole
/// network on that step.
struct Transition {
    StateId to = 0;
    double prob = 0.0;
    double reward = 0.0;
    double difficulty = 0.0;
};

class ArrMdpBuilder;

/// Finite-state, finite-action MDP whose objective is the long-run ratio of
/// accumulated reward to accumulated difficulty contribution.
///
/// States are dense integer ids 0..num_states()-1. Each state exposes a
/// nonempty set of admissible action ids; transitions are stored as sparse
/// adjacency, with duplicate (state, action, next) entries merged at
/// construction (probabilities summed, reward/difficulty probability
/// weighted). Instances are immutable after construction and safe to share
/// across threads.
class ArrMdp {
public:
    StateId num_states() const { return num_states_; }
    StateId initial_state() const { return s_init_; }

    /// Declared bound on |reward| per transition.
    double reward_bound() const { return r_max_; }
    /// Declared bound on difficulty per transition.
    double difficulty_bound() const { return d_max_; }

    /// Admissible action ids for a state, sorted ascending.
    std::span<const ActionId> actions_of(StateId s) const;

    /// Sparse transition entries for (state, action).
    /// Throws InvalidPolicyError if the action is not admissible in `s`.
    std::span<const Transition> transitions(StateId s, ActionId a) const;

    bool is_admissible(StateId s, ActionId a) const;

    /// Lowest admissible action id of a state.
    ActionId first_action(StateId s) const;

    std::size_t num_transition_entries() const { return entries_.size(); }

    /// Iterates every (state, action, entries) triple in canonical order.
    template <typename Fn>
    void for_each_state_action(Fn&& fn) const {
        for (StateId s = 0; s < num_states_; ++s) {
            for (std::uint32_t k = slot_begin_[s]; k < slot_begin_[s + 1]; ++k) {
                fn(s, slot_actions_[k],
                   std::span<const Transition>(entries_.data() + entry_begin_[k],
                                               entry_begin_[k + 1] - entry_begin_[k]));
            }
        }
    }

private:
    friend class ArrMdpBuilder;

    StateId num_states_ = 0;
    StateId s_init_ = 0;
    double r_max_ = 0.0;
    double d_max_ = 0.0;

    // CSR-like layout: states index into action slots, slots index into the
    // flat entry array.
    std::vector<std::uint32_t> slot_begin_;   // size num_states_ + 1
    std::vector<ActionId> slot_actions_;      // one id per slot, ascending per state
    std::vector<std::uint32_t> entry_begin_;  // size slot_actions_.size() + 1
    std::vector<Transition> entries_;

    std::uint32_t find_slot(StateId s, ActionId a) const;
};

/// Accumulates raw transitions and produces a canonical ArrMdp.
class ArrMdpBuilder {
public:
    ArrMdpBuilder(StateId num_states, StateId s_init, double r_max, double d_max);

    /// Adds one transition. Probabilities must be positive and finite;
    /// difficulty must be nonnegative. Row sums are *not* enforced here so
    /// that defective models can still be constructed and reported on by
    /// validate().
    void add(StateId from, ActionId action, StateId to, double prob, double reward,
             double difficulty);

    /// Merges duplicates, sorts canonically and freezes the model.
    ArrMdp build() &&;

private:
    struct RawEntry {
        StateId from;
        ActionId action;
        StateId to;
        double prob;
        double reward;
        double difficulty;
    };

    StateId num_states_;
    StateId s_init_;
    double r_max_;
    double d_max_;
    std::vector<RawEntry> raw_;
};

/// Total deterministic mapping state -> admissible action id.
class Policy {
public:
    Policy() = default;
    explicit Policy(std::vector<ActionId> choice) : choice_(std::move(choice)) {}

    ActionId operator()(StateId s) const { return choice_[static_cast<std::size_t>(s)]; }
    ActionId& operator[](StateId s) { return choice_[static_cast<std::size_t>(s)]; }
    std::size_t size() const { return choice_.size(); }
    const std::vector<ActionId>& choices() const { return choice_; }

    bool operator==(const Policy& other) const = default;

    /// Throws InvalidPolicyError unless every choice is admissible and the
    /// policy covers every state of `mdp`.
    void validate_for(const ArrMdp& mdp) const;

private:
    std::vector<ActionId> choice_;
};

/// Markov chain induced by fixing a policy: row-stochastic sparse matrix plus
/// the per-state expected reward and expected difficulty vectors.
struct InducedChain {
    StateId num_states = 0;
    StateId init = 0;
    std::vector<std::uint32_t> row_begin;  // CSR, size num_states + 1
    std::vector<StateId> col;
    std::vector<double> prob;
    std::vector<double> expected_reward;      // R-hat
    std::vector<double> expected_difficulty;  // D-hat

    std::span<const StateId> row_cols(StateId s) const {
        return {col.data() + row_begin[s], row_begin[s + 1] - row_begin[s]};
    }
    std::span<const double> row_probs(StateId s) const {
        return {prob.data() + row_begin[s], row_begin[s + 1] - row_begin[s]};
    }
};

/// Builds the chain obtained by following `policy` in `mdp`.
InducedChain induce_chain(const ArrMdp& mdp, const Policy& policy);

/// States reachable from the initial state when every admissible action is
/// considered.
std::vector<bool> reachable_states(const ArrMdp& mdp);

} // namespace arrmdp
