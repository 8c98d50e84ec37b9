#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "arrmdp/arr_mdp.hpp"
#include "arrmdp/bitcoin.hpp"

namespace arrmdp {
namespace ethereum {

// Shares adopt/override/match/wait ids with the bitcoin model.
inline constexpr ActionId kAdopt = bitcoin::kAdopt;
inline constexpr ActionId kOverride = bitcoin::kOverride;
inline constexpr ActionId kMatch = bitcoin::kMatch;
inline constexpr ActionId kWait = bitcoin::kWait;
inline constexpr ActionId kReveal = 4;

const char* action_name(ActionId a);

enum class Fork : std::uint8_t { relevant = 0, active = 1 };

/// Uncle reward by distance 1..6 (index 0 unused) and the nephew reward, in
/// units of the regular block reward.
inline constexpr std::array<double, 7> kUncleReward = {0.0,     7.0 / 8, 6.0 / 8, 5.0 / 8,
                                                       4.0 / 8, 3.0 / 8, 2.0 / 8};
inline constexpr double kNephewReward = 1.0 / 32.0;
inline constexpr int kMaxUncleDistance = 6;

/// Selfish-mining state extended with uncle bookkeeping.
///
/// `u_h` is a bitset over distances 1..6 (bit i-1 = distance i) of honest
/// blocks still available as uncles, measured at the first block after the
/// last fork. `r` is h-1 as of the step the miner revealed her first secret
/// block, or 0 while it is secret; it doubles as that block's uncle distance.
/// `u_a` flags a revealed block of the miner from before the last fork whose
/// nephew reward is still pending.
struct State {
    std::int32_t a = 0;
    std::int32_t h = 0;
    Fork fork = Fork::relevant;
    std::int32_t r = 0;
    bool u_a = false;
    std::uint8_t u_h = 0;

    bool operator==(const State&) const = default;
};

struct Params {
    double alpha = 0.0;        // relative mining power, in [0, 0.5)
    std::int32_t max_fork = 2;
    // Ties are broken uniformly at random, so the rushing level is fixed.
    static constexpr double gamma = 0.5;
};

struct Model {
    Params params;
    ArrMdp mdp;
    std::vector<State> states;

    StateId id_of(const State& s) const;
    const State& state_of(StateId id) const { return states[static_cast<std::size_t>(id)]; }

private:
    friend Model build(const Params&);
    std::unordered_map<std::uint64_t, StateId> index_;
};

/// Shifts available-uncle distances `by` blocks further into the past,
/// dropping everything beyond distance 6.
std::uint8_t shift_uncles(std::uint8_t u_h, std::int32_t by);

/// Outcome of settling uncle references when `h` public blocks are accepted:
/// how many honest uncles got referenced, whether the miner's revealed first
/// block was among them, and the honest uncles left over (unshifted).
struct UncleSettlement {
    int honest_refs = 0;
    bool own_referenced = false;
    std::uint8_t remaining = 0;
};

/// Each accepted block references up to two available uncles, furthest
/// first; an uncle at distance i can be referenced by block k only while
/// i + k - 1 <= 6, and the miner's revealed block only by blocks mined after
/// the reveal (k >= r + 2).
UncleSettlement settle_uncles(std::int32_t h, std::int32_t r, std::uint8_t u_h);

/// Builds the Ethereum decision process with uncle and nephew rewards and
/// uncle-inclusive difficulty. Same composite step convention and state
/// enumeration as the bitcoin model.
Model build(const Params& params);

/// Publish immediately, adopt any longer public chain, never withhold.
Policy honest_policy(const Model& model);

} // namespace ethereum
} // namespace arrmdp
