#include "arrmdp/arr_mdp.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace arrmdp {

std::span<const ActionId> ArrMdp::actions_of(StateId s) const {
    return {slot_actions_.data() + slot_begin_[s], slot_begin_[s + 1] - slot_begin_[s]};
}

std::uint32_t ArrMdp::find_slot(StateId s, ActionId a) const {
    for (std::uint32_t k = slot_begin_[s]; k < slot_begin_[s + 1]; ++k) {
        if (slot_actions_[k] == a) return k;
    }
    throw InvalidPolicyError("action " + std::to_string(a) + " not admissible in state " +
                             std::to_string(s));
}

std::span<const Transition> ArrMdp::transitions(StateId s, ActionId a) const {
    const std::uint32_t k = find_slot(s, a);
    return {entries_.data() + entry_begin_[k], entry_begin_[k + 1] - entry_begin_[k]};
}

bool ArrMdp::is_admissible(StateId s, ActionId a) const {
    for (ActionId b : actions_of(s)) {
        if (b == a) return true;
    }
    return false;
}

ActionId ArrMdp::first_action(StateId s) const {
    const auto acts = actions_of(s);
    if (acts.empty()) throw Error("state " + std::to_string(s) + " has no admissible action");
    return acts.front();
}

ArrMdpBuilder::ArrMdpBuilder(StateId num_states, StateId s_init, double r_max, double d_max)
    : num_states_(num_states), s_init_(s_init), r_max_(r_max), d_max_(d_max) {
    if (num_states <= 0) throw InvalidParamsError("model needs at least one state");
    if (s_init < 0 || s_init >= num_states) throw InvalidParamsError("s_init out of range");
    if (r_max < 0.0 || d_max < 0.0) throw InvalidParamsError("r_max and d_max must be >= 0");
}

void ArrMdpBuilder::add(StateId from, ActionId action, StateId to, double prob, double reward,
                        double difficulty) {
    if (from < 0 || from >= num_states_ || to < 0 || to >= num_states_)
        throw InvalidParamsError("transition endpoint out of range");
    if (action < 0) throw InvalidParamsError("action ids must be nonnegative");
    if (!(prob > 0.0) || !std::isfinite(prob) || prob > 1.0 + 1e-12)
        throw InvalidParamsError("transition probability must lie in (0, 1]");
    if (!(difficulty >= 0.0) || !std::isfinite(difficulty))
        throw InvalidParamsError("difficulty must be finite and >= 0");
    if (!std::isfinite(reward)) throw InvalidParamsError("reward must be finite");
    raw_.push_back({from, action, to, prob, reward, difficulty});
}

ArrMdp ArrMdpBuilder::build() && {
    std::sort(raw_.begin(), raw_.end(), [](const RawEntry& a, const RawEntry& b) {
        if (a.from != b.from) return a.from < b.from;
        if (a.action != b.action) return a.action < b.action;
        return a.to < b.to;
    });

    // Merge duplicate (from, action, to) triples: probabilities add, reward
    // and difficulty become probability-weighted means, so R(i,j) and D(i,j)
    // stay well defined functions of the pair.
    std::vector<RawEntry> merged;
    merged.reserve(raw_.size());
    for (const RawEntry& e : raw_) {
        if (!merged.empty()) {
            RawEntry& m = merged.back();
            if (m.from == e.from && m.action == e.action && m.to == e.to) {
                const double p = m.prob + e.prob;
                m.reward = (m.reward * m.prob + e.reward * e.prob) / p;
                m.difficulty = (m.difficulty * m.prob + e.difficulty * e.prob) / p;
                m.prob = p;
                continue;
            }
        }
        merged.push_back(e);
    }

    ArrMdp mdp;
    mdp.num_states_ = num_states_;
    mdp.s_init_ = s_init_;
    mdp.r_max_ = r_max_;
    mdp.d_max_ = d_max_;
    mdp.slot_begin_.assign(static_cast<std::size_t>(num_states_) + 1, 0);
    mdp.entries_.reserve(merged.size());

    std::size_t i = 0;
    for (StateId s = 0; s < num_states_; ++s) {
        mdp.slot_begin_[s] = static_cast<std::uint32_t>(mdp.slot_actions_.size());
        while (i < merged.size() && merged[i].from == s) {
            const ActionId a = merged[i].action;
            mdp.slot_actions_.push_back(a);
            mdp.entry_begin_.push_back(static_cast<std::uint32_t>(mdp.entries_.size()));
            while (i < merged.size() && merged[i].from == s && merged[i].action == a) {
                mdp.entries_.push_back(
                    {merged[i].to, merged[i].prob, merged[i].reward, merged[i].difficulty});
                ++i;
            }
        }
    }
    mdp.slot_begin_[num_states_] = static_cast<std::uint32_t>(mdp.slot_actions_.size());
    mdp.entry_begin_.push_back(static_cast<std::uint32_t>(mdp.entries_.size()));

    for (StateId s = 0; s < num_states_; ++s) {
        if (mdp.slot_begin_[s] == mdp.slot_begin_[s + 1])
            throw InvalidParamsError("state " + std::to_string(s) + " has no admissible action");
    }
    return mdp;
}

void Policy::validate_for(const ArrMdp& mdp) const {
    if (choice_.size() != static_cast<std::size_t>(mdp.num_states()))
        throw InvalidPolicyError("policy does not cover every state");
    for (StateId s = 0; s < mdp.num_states(); ++s) {
        if (!mdp.is_admissible(s, choice_[static_cast<std::size_t>(s)]))
            throw InvalidPolicyError("policy picks inadmissible action " +
                                     std::to_string(choice_[static_cast<std::size_t>(s)]) +
                                     " in state " + std::to_string(s));
    }
}

InducedChain induce_chain(const ArrMdp& mdp, const Policy& policy) {
    policy.validate_for(mdp);

    InducedChain chain;
    chain.num_states = mdp.num_states();
    chain.init = mdp.initial_state();
    chain.row_begin.assign(static_cast<std::size_t>(chain.num_states) + 1, 0);
    chain.expected_reward.assign(static_cast<std::size_t>(chain.num_states), 0.0);
    chain.expected_difficulty.assign(static_cast<std::size_t>(chain.num_states), 0.0);

    for (StateId s = 0; s < chain.num_states; ++s) {
        const auto row = mdp.transitions(s, policy(s));
        chain.row_begin[s + 1] = chain.row_begin[s] + static_cast<std::uint32_t>(row.size());
        for (const Transition& t : row) {
            chain.col.push_back(t.to);
            chain.prob.push_back(t.prob);
            chain.expected_reward[s] += t.reward * t.prob;
            chain.expected_difficulty[s] += t.difficulty * t.prob;
        }
    }
    return chain;
}

std::vector<bool> reachable_states(const ArrMdp& mdp) {
    std::vector<bool> seen(static_cast<std::size_t>(mdp.num_states()), false);
    std::deque<StateId> queue;
    seen[static_cast<std::size_t>(mdp.initial_state())] = true;
    queue.push_back(mdp.initial_state());
    while (!queue.empty()) {
        const StateId s = queue.front();
        queue.pop_front();
        for (ActionId a : mdp.actions_of(s)) {
            for (const Transition& t : mdp.transitions(s, a)) {
                if (!seen[static_cast<std::size_t>(t.to)]) {
                    seen[static_cast<std::size_t>(t.to)] = true;
                    queue.push_back(t.to);
                }
            }
        }
    }
    return seen;
}

} // namespace arrmdp
