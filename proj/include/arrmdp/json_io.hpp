#pragma once

#include <nlohmann/json_fwd.hpp>

#include "arrmdp/arr_mdp.hpp"
#include "arrmdp/bitcoin.hpp"
#include "arrmdp/ethereum.hpp"
#include "arrmdp/pt_mdp.hpp"
#include "arrmdp/revenue.hpp"
#include "arrmdp/solvers.hpp"

namespace arrmdp {

/// Portable model document: header fields states / s_init / r_max / d_max
/// plus a flat transitions array of {from, action, to, p, r, d} entries.
nlohmann::json mdp_to_json(const ArrMdp& mdp);
ArrMdp mdp_from_json(const nlohmann::json& doc);

/// Same document with the terminal state flagged and the horizon recorded.
nlohmann::json pt_mdp_to_json(const PtMdp& pt);

/// State-id decoding tables placed under the "semantics" key of a model
/// document.
nlohmann::json bitcoin_semantics(const bitcoin::Model& model);
nlohmann::json ethereum_semantics(const ethereum::Model& model);

nlohmann::json solve_report_to_json(const SolveReport& report);
nlohmann::json revenue_to_json(const RevenueBreakdown& breakdown, bool include_mu = false);

} // namespace arrmdp
