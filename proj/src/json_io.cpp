#include "arrmdp/json_io.hpp"

#include <nlohmann/json.hpp>

namespace arrmdp {

using nlohmann::json;

json mdp_to_json(const ArrMdp& mdp) {
    json doc;
    doc["states"] = mdp.num_states();
    doc["s_init"] = mdp.initial_state();
    doc["r_max"] = mdp.reward_bound();
    doc["d_max"] = mdp.difficulty_bound();
    json transitions = json::array();
    mdp.for_each_state_action([&](StateId s, ActionId a, std::span<const Transition> row) {
        for (const Transition& t : row) {
            transitions.push_back({{"from", s},
                                   {"action", a},
                                   {"to", t.to},
                                   {"p", t.prob},
                                   {"r", t.reward},
                                   {"d", t.difficulty}});
        }
    });
    doc["transitions"] = std::move(transitions);
    return doc;
}

ArrMdp mdp_from_json(const json& doc) {
    ArrMdpBuilder builder(doc.at("states").get<StateId>(), doc.at("s_init").get<StateId>(),
                          doc.at("r_max").get<double>(), doc.at("d_max").get<double>());
    for (const json& t : doc.at("transitions")) {
        builder.add(t.at("from").get<StateId>(), t.at("action").get<ActionId>(),
                    t.at("to").get<StateId>(), t.at("p").get<double>(), t.at("r").get<double>(),
                    t.at("d").get<double>());
    }
    return std::move(builder).build();
}

json pt_mdp_to_json(const PtMdp& pt) {
    json doc = mdp_to_json(pt.mdp);
    doc["terminal_state"] = pt.terminal;
    doc["horizon"] = pt.horizon;
    return doc;
}

json bitcoin_semantics(const bitcoin::Model& model) {
    static constexpr const char* fork_names[] = {"irrelevant", "relevant", "active"};
    json states = json::array();
    for (const bitcoin::State& s : model.states) {
        states.push_back({{"a", s.a}, {"h", s.h}, {"fork", fork_names[static_cast<int>(s.fork)]}});
    }
    json actions;
    for (ActionId a = 0; a <= 3; ++a) actions[std::to_string(a)] = bitcoin::action_name(a);
    return {{"model", "bitcoin"},
            {"alpha", model.params.alpha},
            {"gamma", model.params.gamma},
            {"max_fork", model.params.max_fork},
            {"states", std::move(states)},
            {"actions", std::move(actions)}};
}

json ethereum_semantics(const ethereum::Model& model) {
    static constexpr const char* fork_names[] = {"relevant", "active"};
    json states = json::array();
    for (const ethereum::State& s : model.states) {
        json uncles = json::array();
        for (int i = 1; i <= ethereum::kMaxUncleDistance; ++i)
            uncles.push_back((s.u_h >> (i - 1)) & 1);
        states.push_back({{"a", s.a},
                          {"h", s.h},
                          {"fork", fork_names[static_cast<int>(s.fork)]},
                          {"r", s.r},
                          {"u_a", s.u_a ? 1 : 0},
                          {"u_h", std::move(uncles)}});
    }
    json actions;
    for (ActionId a = 0; a <= 4; ++a) actions[std::to_string(a)] = ethereum::action_name(a);
    return {{"model", "ethereum"},
            {"alpha", model.params.alpha},
            {"max_fork", model.params.max_fork},
            {"states", std::move(states)},
            {"actions", std::move(actions)}};
}

json solve_report_to_json(const SolveReport& report) {
    return {{"iterations", report.policy_iterations},
            {"linear_solves", report.linear_solves},
            {"wall_time_s", report.wall_time_s},
            {"objective", report.objective_value},
            {"converged", report.converged}};
}

json revenue_to_json(const RevenueBreakdown& breakdown, bool include_mu) {
    json doc = {{"rev", breakdown.rev_arr},
                {"avg_r", breakdown.avg_reward_per_step},
                {"avg_d", breakdown.avg_difficulty_per_step}};
    if (include_mu) doc["mu"] = breakdown.mu.mu;
    return doc;
}

} // namespace arrmdp
