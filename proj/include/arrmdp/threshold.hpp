#pragma once

#include <functional>
#include <vector>

#include "arrmdp/errors.hpp"

namespace arrmdp {

/// Optimal reward ratio of a model family at a given mining power; each call
/// is one full solve.
using RevenueAtAlpha = std::function<double(double alpha)>;

struct ThresholdConfig {
    double tol = 5e-4;     // final bracket width on alpha
    double margin = 1e-6;  // guards the profitability test against solver noise
    int spot_checks = 5;   // interior monotonicity probes before bisecting
};

struct ThresholdResult {
    double threshold = 0.0;
    // Every probe made, in order: (alpha, optimal revenue).
    std::vector<std::pair<double, double>> probes;
    // Bracket after each bisection step: (lo, hi).
    std::vector<std::pair<double, double>> bracket_history;
};

/// Deviating is profitable at alpha when the optimal revenue exceeds
/// alpha + margin.
bool profitable(const RevenueAtAlpha& optimal_revenue, double alpha, double margin = 1e-6);

/// Bisects for the smallest alpha at which the optimal strategy strictly
/// beats honest mining. Requires a valid bracket (not profitable at lo,
/// profitable at hi) and spot-checks profitability monotonicity at interior
/// points first; throws BracketError when either fails.
ThresholdResult find_threshold(const RevenueAtAlpha& optimal_revenue, double lo, double hi,
                               const ThresholdConfig& config = {});

} // namespace arrmdp
