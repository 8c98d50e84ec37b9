#include "arrmdp/ethereum.hpp"

#include <deque>

namespace arrmdp {
namespace ethereum {
namespace {

std::uint64_t key_of(const State& s) {
    std::uint64_t k = static_cast<std::uint64_t>(s.a);
    k = k * 256 + static_cast<std::uint64_t>(s.h);
    k = k * 2 + static_cast<std::uint64_t>(s.fork);
    k = k * 8 + static_cast<std::uint64_t>(s.r);
    k = k * 2 + (s.u_a ? 1 : 0);
    k = k * 64 + static_cast<std::uint64_t>(s.u_h & 0x3f);
    return k;
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

constexpr std::uint8_t bit_of(std::int32_t distance) {
    return static_cast<std::uint8_t>(1u << (distance - 1));
}

} // namespace

std::uint8_t shift_uncles(std::uint8_t u_h, std::int32_t by) {
    if (by >= kMaxUncleDistance) return 0;
    return static_cast<std::uint8_t>((u_h << by) & 0x3f);
}

UncleSettlement settle_uncles(std::int32_t h, std::int32_t r, std::uint8_t u_h) {
    UncleSettlement out;
    out.remaining = static_cast<std::uint8_t>(u_h & 0x3f);
    const bool own_available = r >= 1;
    for (std::int32_t k = 1; k <= h; ++k) {
        for (int slot = 0; slot < 2; ++slot) {
            std::int32_t best = -1;
            for (std::int32_t i = kMaxUncleDistance; i >= 1; --i) {
                if ((out.remaining & bit_of(i)) && i + k - 1 <= kMaxUncleDistance) {
                    best = i;
                    break;
                }
            }
            const bool own_ok = own_available && !out.own_referenced && k >= r + 2;
            if (best >= 0 && (!own_ok || best + k - 1 >= r)) {
                out.remaining = static_cast<std::uint8_t>(out.remaining & ~bit_of(best));
                ++out.honest_refs;
            } else if (own_ok) {
                out.own_referenced = true;
            } else {
                break;
            }
        }
    }
    return out;
}

namespace {

// Admissible actions of `s` with composite outcomes (bookkeeping followed by
// the next-block lottery; an active fork resolves inside the lottery).
std::vector<Expansion> expand(const State& s, const Params& p) {
    const double alpha = p.alpha;
    const std::int32_t mf = p.max_fork;
    std::vector<Expansion> result;

    const auto push = [](std::vector<RawTransition>& outs, State to, double prob, double reward,
                         double difficulty) {
        if (prob > 0.0) outs.push_back({to, prob, reward, difficulty});
    };

    if (s.h >= 1) {  // adopt
        const UncleSettlement settled = settle_uncles(s.h, s.r, s.u_h);
        double reward = 0.0;
        double difficulty = static_cast<double>(s.h + settled.honest_refs);
        if (s.r >= 1) {
            // The first secret block was revealed; its uncle reward and
            // difficulty are credited now even when no accepted block had a
            // slot left for it (it is referenced at the next fork instead).
            reward += kUncleReward[static_cast<std::size_t>(s.r)];
            difficulty += 1.0;
        }
        if (s.u_a && settled.honest_refs >= 2) {
            // The pending uncle from the previous fork was assumed to sit in
            // the first block; two older honest uncles displaced it by one.
            reward -= 1.0 / 8.0;
        }
        State base;
        base.fork = Fork::relevant;
        base.u_a = s.r >= 1 && !settled.own_referenced;
        base.u_h = shift_uncles(settled.remaining, s.h);

        Expansion e{kAdopt, {}};
        State miner = base;
        miner.a = 1;
        push(e.outs, miner, alpha, reward, difficulty);
        State honest = base;
        honest.h = 1;
        push(e.outs, honest, 1.0 - alpha, reward, difficulty);
        result.push_back(std::move(e));
    }

    if (s.a > s.h) {  // override
        const double reward = static_cast<double>(s.h + 1) + (s.u_a ? kNephewReward : 0.0);
        const double difficulty = static_cast<double>(s.h + 1);
        std::uint8_t u_h = shift_uncles(s.u_h, s.h + 1);
        // The first block of the orphaned public chain becomes an available
        // honest uncle; deeper orphans are not direct children of the chain.
        if (s.h >= 1 && s.h + 1 <= kMaxUncleDistance) u_h |= bit_of(s.h + 1);

        Expansion e{kOverride, {}};
        State miner{s.a - s.h, 0, Fork::relevant, 0, false, u_h};
        push(e.outs, miner, alpha, reward, difficulty);
        State honest{s.a - s.h - 1, 1, Fork::relevant, 0, false, u_h};
        push(e.outs, honest, 1.0 - alpha, reward, difficulty);
        result.push_back(std::move(e));
    }

    // Split lottery shared by match and wait-on-active-fork. When an honest
    // miner extends the miner's released chain, her h blocks are accepted,
    // the orphaned public head becomes an uncle candidate, and any pending
    // own uncle earns its nephew reward.
    const auto split_outcomes = [&](std::vector<RawTransition>& outs, std::int32_t r_after) {
        State mined{s.a + 1, s.h, Fork::active, r_after, s.u_a, s.u_h};
        push(outs, mined, alpha, 0.0, 0.0);

        std::uint8_t u_h = shift_uncles(s.u_h, s.h);
        if (s.h <= kMaxUncleDistance) u_h |= bit_of(s.h);
        State resolved{s.a - s.h, 1, Fork::relevant, 0, false, u_h};
        push(outs, resolved, (1.0 - alpha) * Params::gamma,
             static_cast<double>(s.h) + (s.u_a ? kNephewReward : 0.0),
             static_cast<double>(s.h));

        State extended{s.a, s.h + 1, Fork::relevant, r_after, s.u_a, s.u_h};
        push(outs, extended, (1.0 - alpha) * (1.0 - Params::gamma), 0.0, 0.0);
    };

    if (s.fork == Fork::relevant && s.h >= 1 && s.h <= s.a && s.a < mf) {  // match
        // Matching reveals the first h blocks; record the reveal height of
        // the first one unless it was revealed earlier or is unreferencable.
        std::int32_t r_after = s.r;
        if (r_after == 0 && s.h - 1 >= 1 && s.h - 1 <= kMaxUncleDistance) r_after = s.h - 1;
        Expansion e{kMatch, {}};
        split_outcomes(e.outs, r_after);
        result.push_back(std::move(e));
    }

    if (s.fork == Fork::active) {
        if (s.h >= 1 && s.h <= s.a && s.a < mf) {  // wait during a split
            Expansion e{kWait, {}};
            split_outcomes(e.outs, s.r);
            result.push_back(std::move(e));
        }
    } else if (s.a < mf && s.h < mf) {
        {  // wait
            Expansion e{kWait, {}};
            State mined{s.a + 1, s.h, Fork::relevant, s.r, s.u_a, s.u_h};
            push(e.outs, mined, alpha, 0.0, 0.0);
            State honest{s.a, s.h + 1, Fork::relevant, s.r, s.u_a, s.u_h};
            push(e.outs, honest, 1.0 - alpha, 0.0, 0.0);
            result.push_back(std::move(e));
        }
        if (s.a >= 1 && s.r == 0 && s.h >= 2 && s.h - 1 <= kMaxUncleDistance) {  // reveal
            Expansion e{kReveal, {}};
            State mined{s.a + 1, s.h, Fork::relevant, s.h - 1, s.u_a, s.u_h};
            push(e.outs, mined, alpha, 0.0, 0.0);
            State honest{s.a, s.h + 1, Fork::relevant, s.h - 1, s.u_a, s.u_h};
            push(e.outs, honest, 1.0 - alpha, 0.0, 0.0);
            result.push_back(std::move(e));
        }
    }
    return result;
}

} // namespace

const char* action_name(ActionId a) {
    return a == kReveal ? "reveal" : bitcoin::action_name(a);
}

StateId Model::id_of(const State& s) const {
    const auto it = index_.find(key_of(s));
    if (it == index_.end()) throw Error("ethereum state not part of the model");
    return it->second;
}

Model build(const Params& p) {
    if (!(p.alpha >= 0.0 && p.alpha < 0.5))
        throw InvalidParamsError("alpha must lie in [0, 0.5)");
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
    frontier.push_back(intern(State{}));
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

    const double r_max = static_cast<double>(p.max_fork) + 2.0;
    const double d_max = static_cast<double>(p.max_fork) + 7.0;
    ArrMdpBuilder builder(static_cast<StateId>(model.states.size()), 0, r_max, d_max);
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

} // namespace ethereum
} // namespace arrmdp
