#include "arrmdp/bitcoin.hpp"

#include <deque>

namespace arrmdp {
namespace bitcoin {
namespace {

std::uint64_t key_of(const State& s) {
    return (static_cast<std::uint64_t>(s.a) << 24) | (static_cast<std::uint64_t>(s.h) << 8) |
           static_cast<std::uint64_t>(s.fork);
}

struct RawTransition {
    State to;
    double prob;
    double reward;
    double difficulty;
};

struct Expansion {
    ActionId action;
    std::vector<RawTransition> outs;
};

// All admissible actions of `s` with their composite outcomes: the action's
// bookkeeping followed by the next-block lottery.
std::vector<Expansion> expand(const State& s, const Params& p) {
    const double alpha = p.alpha;
    const double gamma = p.gamma;
    const std::int32_t mf = p.max_fork;
    std::vector<Expansion> result;

    const auto push = [](std::vector<RawTransition>& outs, State to, double prob, double reward,
                         double difficulty) {
        if (prob > 0.0) outs.push_back({to, prob, reward, difficulty});
    };

    if (s.h >= 1) {  // adopt: accept the h public blocks
        Expansion e{kAdopt, {}};
        const double d = s.h;
        push(e.outs, {1, 0, Fork::irrelevant}, alpha, 0.0, d);
        push(e.outs, {0, 1, Fork::relevant}, 1.0 - alpha, 0.0, d);
        result.push_back(std::move(e));
    }
    if (s.a > s.h) {  // override: publish h+1 blocks and take over
        Expansion e{kOverride, {}};
        const double rd = s.h + 1;
        push(e.outs, {s.a - s.h, 0, Fork::irrelevant}, alpha, rd, rd);
        push(e.outs, {s.a - s.h - 1, 1, Fork::relevant}, 1.0 - alpha, rd, rd);
        result.push_back(std::move(e));
    }
    // The three-way lottery of an ongoing network split. An honest block on
    // the miner's released chain settles the fork and credits her h blocks.
    const auto split_outcomes = [&](std::vector<RawTransition>& outs) {
        push(outs, {s.a + 1, s.h, Fork::active}, alpha, 0.0, 0.0);
        push(outs, {s.a - s.h, 1, Fork::relevant}, (1.0 - alpha) * gamma, s.h, s.h);
        push(outs, {s.a, s.h + 1, Fork::relevant}, (1.0 - alpha) * (1.0 - gamma), 0.0, 0.0);
    };
    if (s.fork == Fork::relevant && s.h >= 1 && s.h <= s.a && s.a < mf) {
        Expansion e{kMatch, {}};
        split_outcomes(e.outs);
        result.push_back(std::move(e));
    }
    if (s.fork != Fork::active) {
        if (s.a < mf && s.h < mf) {
            Expansion e{kWait, {}};
            push(e.outs, {s.a + 1, s.h, Fork::irrelevant}, alpha, 0.0, 0.0);
            push(e.outs, {s.a, s.h + 1, Fork::relevant}, 1.0 - alpha, 0.0, 0.0);
            result.push_back(std::move(e));
        }
    } else if (s.h >= 1 && s.h <= s.a && s.a < mf) {
        Expansion e{kWait, {}};
        split_outcomes(e.outs);
        result.push_back(std::move(e));
    }
    return result;
}

} // namespace

const char* action_name(ActionId a) {
    switch (a) {
        case kAdopt: return "adopt";
        case kOverride: return "override";
        case kMatch: return "match";
        case kWait: return "wait";
        default: return "?";
    }
}

StateId Model::id_of(const State& s) const {
    const auto it = index_.find(key_of(s));
    if (it == index_.end()) throw Error("bitcoin state not part of the model");
    return it->second;
}

Model build(const Params& p) {
    if (!(p.alpha >= 0.0 && p.alpha < 0.5))
        throw InvalidParamsError("alpha must lie in [0, 0.5)");
    if (!(p.gamma >= 0.0 && p.gamma <= 1.0))
        throw InvalidParamsError("gamma must lie in [0, 1]");
    if (p.max_fork < 2) throw InvalidParamsError("max_fork must be at least 2");

    Model model;
    model.params = p;

    struct Edge {
        StateId from;
        ActionId action;
        StateId to;
        double prob, reward, difficulty;
    };
    std::vector<Edge> edges;

    const auto intern = [&](const State& s) -> StateId {
        const auto [it, inserted] =
            model.index_.try_emplace(key_of(s), static_cast<StateId>(model.states.size()));
        if (inserted) model.states.push_back(s);
        return it->second;
    };

    std::deque<StateId> frontier;
    frontier.push_back(intern({0, 0, Fork::irrelevant}));
    while (!frontier.empty()) {
        const StateId id = frontier.front();
        frontier.pop_front();
        const State s = model.states[static_cast<std::size_t>(id)];
        for (const Expansion& e : expand(s, p)) {
            for (const RawTransition& t : e.outs) {
                const StateId before = static_cast<StateId>(model.states.size());
                const StateId to = intern(t.to);
                if (to == before) frontier.push_back(to);
                edges.push_back({id, e.action, to, t.prob, t.reward, t.difficulty});
            }
        }
    }

    const double bound = static_cast<double>(p.max_fork) + 1.0;
    ArrMdpBuilder builder(static_cast<StateId>(model.states.size()), 0, bound, bound);
    for (const Edge& e : edges)
        builder.add(e.from, e.action, e.to, e.prob, e.reward, e.difficulty);
    model.mdp = std::move(builder).build();
    return model;
}

Policy honest_policy(const Model& model) {
    std::vector<ActionId> choice(model.states.size());
    for (std::size_t i = 0; i < model.states.size(); ++i) {
        const State& s = model.states[i];
        if (s.a > s.h) {
            choice[i] = kOverride;
        } else if (s.h >= 1) {
            choice[i] = kAdopt;
        } else {
            choice[i] = kWait;
        }
    }
    return Policy(std::move(choice));
}

} // namespace bitcoin
} // namespace arrmdp
