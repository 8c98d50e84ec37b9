#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "arrmdp/arr_mdp.hpp"

namespace arrmdp {
namespace bitcoin {

/// Action ids shared by the blockchain models.
inline constexpr ActionId kAdopt = 0;
inline constexpr ActionId kOverride = 1;
inline constexpr ActionId kMatch = 2;
inline constexpr ActionId kWait = 3;

const char* action_name(ActionId a);

enum class Fork : std::uint8_t { irrelevant = 0, relevant = 1, active = 2 };

/// Selfish-mining state: length of the miner's secret chain, public blocks
/// since the last fork, and whether a match is possible or already active.
struct State {
    std::int32_t a = 0;
    std::int32_t h = 0;
    Fork fork = Fork::irrelevant;

    bool operator==(const State&) const = default;
};

struct Params {
    double alpha = 0.0;   // relative mining power, in [0, 0.5)
    double gamma = 0.0;   // rushing level, in [0, 1]
    std::int32_t max_fork = 2;
};

/// The generated model together with the id <-> state mapping, which the
/// builder owns and serializes alongside the transitions.
struct Model {
    Params params;
    ArrMdp mdp;
    std::vector<State> states;  // indexed by state id

    StateId id_of(const State& s) const;
    const State& state_of(StateId id) const { return states[static_cast<std::size_t>(id)]; }

private:
    friend Model build(const Params&);
    std::unordered_map<std::uint64_t, StateId> index_;
};

/// Builds the selfish-mining decision process. Each transition composes the
/// chosen action's bookkeeping with the arrival of the next block, so state
/// (0,0,irrelevant) doubles as the synthetic start state whose one-block
/// lottery seeds the chain. Only states reachable from the start under some
/// policy are enumerated. Throws InvalidParamsError on a bad parameter.
Model build(const Params& params);

/// Protocol-following reference strategy: publish a one-block lead
/// immediately, adopt any longer public chain, never match. Its exact reward
/// ratio equals alpha.
Policy honest_policy(const Model& model);

} // namespace bitcoin
} // namespace arrmdp
