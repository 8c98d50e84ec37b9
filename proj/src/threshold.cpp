#include "arrmdp/threshold.hpp"

#include <string>

namespace arrmdp {

bool profitable(const RevenueAtAlpha& optimal_revenue, double alpha, double margin) {
    return optimal_revenue(alpha) > alpha + margin;
}

ThresholdResult find_threshold(const RevenueAtAlpha& optimal_revenue, double lo, double hi,
                               const ThresholdConfig& config) {
    if (!(lo < hi)) throw BracketError("threshold bracket must satisfy lo < hi");
    if (!(config.tol > 0.0)) throw BracketError("threshold tolerance must be positive");

    ThresholdResult result;
    const auto is_profitable = [&](double alpha) {
        const double rev = optimal_revenue(alpha);
        result.probes.emplace_back(alpha, rev);
        return rev > alpha + config.margin;
    };

    if (is_profitable(lo))
        throw BracketError("deviating is already profitable at alpha = " + std::to_string(lo));
    if (!is_profitable(hi))
        throw BracketError("deviating is not profitable at alpha = " + std::to_string(hi));

    // Profitability must flip exactly once across the bracket.
    bool seen_profitable = false;
    for (int k = 1; k <= config.spot_checks; ++k) {
        const double alpha =
            lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(config.spot_checks + 1);
        const bool p = is_profitable(alpha);
        if (seen_profitable && !p)
            throw BracketError("profitability is not monotone in alpha near " +
                               std::to_string(alpha) + "; refusing to bisect");
        seen_profitable = seen_profitable || p;
    }

    while (hi - lo > config.tol) {
        const double mid = 0.5 * (lo + hi);
        if (is_profitable(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
        result.bracket_history.emplace_back(lo, hi);
    }
    result.threshold = 0.5 * (lo + hi);
    return result;
}

} // namespace arrmdp
