#include "arrmdp/stationary.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <numeric>

namespace arrmdp {
namespace {

std::vector<bool> reachable_from_init(const InducedChain& chain) {
    std::vector<bool> seen(static_cast<std::size_t>(chain.num_states), false);
    std::deque<StateId> queue;
    seen[static_cast<std::size_t>(chain.init)] = true;
    queue.push_back(chain.init);
    while (!queue.empty()) {
        const StateId s = queue.front();
        queue.pop_front();
        const auto cols = chain.row_cols(s);
        for (const StateId j : cols) {
            if (!seen[static_cast<std::size_t>(j)]) {
                seen[static_cast<std::size_t>(j)] = true;
                queue.push_back(j);
            }
        }
    }
    return seen;
}

// Iterative Tarjan SCC over the reachable subgraph. Returns the component id
// of every reachable state; ids are assigned in reverse topological order.
struct SccResult {
    std::vector<std::int32_t> comp;  // -1 for unreachable states
    std::int32_t count = 0;
};

SccResult strongly_connected_components(const InducedChain& chain,
                                        const std::vector<bool>& reachable) {
    const std::int32_t n = chain.num_states;
    SccResult res;
    res.comp.assign(static_cast<std::size_t>(n), -1);

    std::vector<std::int32_t> index(static_cast<std::size_t>(n), -1);
    std::vector<std::int32_t> low(static_cast<std::size_t>(n), 0);
    std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
    std::vector<StateId> stack;
    std::int32_t next_index = 0;

    struct Frame {
        StateId v;
        std::uint32_t edge;
    };
    std::vector<Frame> call;

    for (StateId root = 0; root < n; ++root) {
        if (!reachable[static_cast<std::size_t>(root)] ||
            index[static_cast<std::size_t>(root)] != -1)
            continue;
        call.push_back({root, chain.row_begin[root]});
        index[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = next_index++;
        stack.push_back(root);
        on_stack[static_cast<std::size_t>(root)] = true;

        while (!call.empty()) {
            Frame& f = call.back();
            if (f.edge < chain.row_begin[f.v + 1]) {
                const StateId w = chain.col[f.edge++];
                if (index[static_cast<std::size_t>(w)] == -1) {
                    call.push_back({w, chain.row_begin[w]});
                    index[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] =
                        next_index++;
                    stack.push_back(w);
                    on_stack[static_cast<std::size_t>(w)] = true;
                } else if (on_stack[static_cast<std::size_t>(w)]) {
                    low[static_cast<std::size_t>(f.v)] =
                        std::min(low[static_cast<std::size_t>(f.v)],
                                 index[static_cast<std::size_t>(w)]);
                }
            } else {
                if (low[static_cast<std::size_t>(f.v)] == index[static_cast<std::size_t>(f.v)]) {
                    while (true) {
                        const StateId w = stack.back();
                        stack.pop_back();
                        on_stack[static_cast<std::size_t>(w)] = false;
                        res.comp[static_cast<std::size_t>(w)] = res.count;
                        if (w == f.v) break;
                    }
                    ++res.count;
                }
                const StateId v = f.v;
                call.pop_back();
                if (!call.empty()) {
                    low[static_cast<std::size_t>(call.back().v)] =
                        std::min(low[static_cast<std::size_t>(call.back().v)],
                                 low[static_cast<std::size_t>(v)]);
                }
            }
        }
    }
    return res;
}

double fixed_point_residual(const InducedChain& chain, const std::vector<double>& mu) {
    std::vector<double> muP(mu.size(), 0.0);
    for (StateId s = 0; s < chain.num_states; ++s) {
        const double m = mu[static_cast<std::size_t>(s)];
        if (m == 0.0) continue;
        for (std::uint32_t k = chain.row_begin[s]; k < chain.row_begin[s + 1]; ++k)
            muP[static_cast<std::size_t>(chain.col[k])] += m * chain.prob[k];
    }
    double r = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) r = std::max(r, std::abs(muP[i] - mu[i]));
    return r;
}

// Solves mu^T P = mu^T restricted to the index set `states`, normalizing the
// total mass to one by replacing the last equation.
std::vector<double> solve_direct(const InducedChain& chain, const std::vector<StateId>& states,
                                 const std::vector<std::int32_t>& local) {
    const std::int32_t m = static_cast<std::int32_t>(states.size());
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(states.size() * 4);
    for (std::int32_t li = 0; li < m; ++li) {
        const StateId s = states[static_cast<std::size_t>(li)];
        for (std::uint32_t k = chain.row_begin[s]; k < chain.row_begin[s + 1]; ++k) {
            const std::int32_t lj = local[static_cast<std::size_t>(chain.col[k])];
            if (lj < 0) continue;  // mass never leaves a recurrent class
            if (lj != m - 1) trips.emplace_back(lj, li, chain.prob[k]);
        }
        if (li != m - 1) trips.emplace_back(li, li, -1.0);
        trips.emplace_back(m - 1, li, 1.0);  // normalization row
    }

    Eigen::SparseMatrix<double> A(m, m);
    A.setFromTriplets(trips.begin(), trips.end());
    A.makeCompressed();

    Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
    b[m - 1] = 1.0;

    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.analyzePattern(A);
    lu.factorize(A);
    if (lu.info() != Eigen::Success)
        throw SolverError("stationary distribution: sparse factorization failed");
    const Eigen::VectorXd x = lu.solve(b);
    if (lu.info() != Eigen::Success)
        throw SolverError("stationary distribution: sparse solve failed");

    std::vector<double> mu(static_cast<std::size_t>(m));
    for (std::int32_t i = 0; i < m; ++i) mu[static_cast<std::size_t>(i)] = x[i];
    return mu;
}

// Damped power iteration; the half-lazy chain has the same stationary
// distribution and is aperiodic even when P itself is periodic.
std::vector<double> solve_power(const InducedChain& chain, const std::vector<StateId>& states,
                                const std::vector<std::int32_t>& local) {
    const std::size_t m = states.size();
    std::vector<double> mu(m, 1.0 / static_cast<double>(m));
    std::vector<double> next(m, 0.0);
    for (int iter = 0; iter < 200000; ++iter) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t li = 0; li < m; ++li) {
            const StateId s = states[li];
            const double w = mu[li];
            for (std::uint32_t k = chain.row_begin[s]; k < chain.row_begin[s + 1]; ++k) {
                const std::int32_t lj = local[static_cast<std::size_t>(chain.col[k])];
                if (lj >= 0) next[static_cast<std::size_t>(lj)] += w * chain.prob[k];
            }
        }
        double diff = 0.0;
        double mass = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            next[i] = 0.5 * next[i] + 0.5 * mu[i];
            mass += next[i];
        }
        for (std::size_t i = 0; i < m; ++i) {
            next[i] /= mass;
            diff = std::max(diff, std::abs(next[i] - mu[i]));
        }
        mu.swap(next);
        if (diff < 1e-14) break;
    }
    return mu;
}

} // namespace

StationaryDistribution stationary_distribution(const InducedChain& chain,
                                               LinearSolverKind solver) {
    const std::vector<bool> reachable = reachable_from_init(chain);
    const SccResult scc = strongly_connected_components(chain, reachable);

    // A component is recurrent iff it has no edge leaving it.
    std::vector<bool> closed(static_cast<std::size_t>(scc.count), true);
    for (StateId s = 0; s < chain.num_states; ++s) {
        const std::int32_t c = scc.comp[static_cast<std::size_t>(s)];
        if (c < 0) continue;
        for (std::uint32_t k = chain.row_begin[s]; k < chain.row_begin[s + 1]; ++k) {
            if (scc.comp[static_cast<std::size_t>(chain.col[k])] != c)
                closed[static_cast<std::size_t>(c)] = false;
        }
    }
    std::int32_t recurrent = -1;
    for (std::int32_t c = 0; c < scc.count; ++c) {
        if (!closed[static_cast<std::size_t>(c)]) continue;
        if (recurrent != -1)
            throw SolverError(
                "stationary distribution: chain has multiple recurrent classes reachable from "
                "the initial state");
        recurrent = c;
    }
    if (recurrent == -1)
        throw SolverError("stationary distribution: no recurrent class found");

    std::vector<StateId> states;
    std::vector<std::int32_t> local(static_cast<std::size_t>(chain.num_states), -1);
    for (StateId s = 0; s < chain.num_states; ++s) {
        if (scc.comp[static_cast<std::size_t>(s)] == recurrent) {
            local[static_cast<std::size_t>(s)] = static_cast<std::int32_t>(states.size());
            states.push_back(s);
        }
    }

    std::vector<double> local_mu = solver == LinearSolverKind::direct
                                       ? solve_direct(chain, states, local)
                                       : solve_power(chain, states, local);

    StationaryDistribution out;
    out.mu.assign(static_cast<std::size_t>(chain.num_states), 0.0);
    double mass = 0.0;
    for (std::size_t li = 0; li < states.size(); ++li) {
        // Tiny negative entries are factorization noise on huge chains.
        const double v = std::max(local_mu[li], 0.0);
        out.mu[static_cast<std::size_t>(states[li])] = v;
        mass += v;
    }
    if (!(mass > 0.0)) throw SolverError("stationary distribution: vanished mass");
    for (double& v : out.mu) v /= mass;

    out.residual = fixed_point_residual(chain, out.mu);
    if (out.residual > 1e-9) {
        if (solver == LinearSolverKind::direct) {
            // One damping pass usually polishes borderline factorizations.
            std::vector<double> refined = solve_power(chain, states, local);
            double refined_mass = 0.0;
            for (std::size_t li = 0; li < states.size(); ++li)
                refined_mass += std::max(refined[li], 0.0);
            for (std::size_t li = 0; li < states.size(); ++li)
                out.mu[static_cast<std::size_t>(states[li])] =
                    std::max(refined[li], 0.0) / refined_mass;
            out.residual = fixed_point_residual(chain, out.mu);
        }
        if (out.residual > 1e-9)
            throw SolverError("stationary distribution: residual " +
                              std::to_string(out.residual) + " above tolerance");
    }
    return out;
}

} // namespace arrmdp
