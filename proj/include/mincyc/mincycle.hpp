#ifndef MINCYC_MINCYCLE_HPP
#define MINCYC_MINCYCLE_HPP

/**
 * Minimum-weight cycles in a Z2 homology class.
 *
 * The search for a fixed start vertex u and class index i is a label-setting
 * shortest-path search on the 1-skeleton of the covering, explored lazily from
 * (u, 0) until (u, i) is settled. Projecting the path gives a cycle through u
 * with index i, and lifts of all such cycles end at (u, i), so the projection
 * is the lightest one. Every cycle in the class meets the basis cycle z_k for
 * any coordinate k with i^k = 1, so minimizing over the vertices of z_k gives
 * the minimum over the whole class.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mincyc/complex.hpp"
#include "mincyc/covering.hpp"
#include "mincyc/error.hpp"
#include "mincyc/homology.hpp"
#include "mincyc/index_function.hpp"
#include "mincyc/parallel.hpp"
#include "mincyc/weights.hpp"

namespace mincyc {

struct MinCycleResult {
    Chain cycle;                           ///< mod-2 projection of the witness path
    double weight = 0.0;                   ///< L(cycle)
    double path_weight = 0.0;              ///< weight of the witness path, >= weight
    std::vector<CoveringVertex> witness;   ///< (u,0) ... (u,i); empty for the zero class
    GroupElement class_index;
    std::optional<VertexId> start;
};

/// Optional instrumentation of a search: states in settlement order.
struct SearchTrace {
    std::vector<std::pair<CoveringVertex, double>> settled;
    std::size_t discovered = 0;
};

/**
 * Lightest cycle through u whose index is i (i != 0).
 *
 * Ties in the frontier are broken by smaller vertex id and then the
 * lexicographically smaller sheet, and a label is only replaced by a strictly
 * smaller one, so the result is deterministic.
 */
inline MinCycleResult min_cycle_fixed_vertex_index(const IndexTable& t, const SimplicialComplex& c,
                                                   const WeightFunction& L, VertexId u, const GroupElement& i,
                                                   SearchTrace* trace = nullptr)
{
    if (i.size() != t.rank())
        throw Error(ErrorCode::DimensionMismatch, "class index has length " + std::to_string(i.size()) +
                                                      ", table rank is " + std::to_string(t.rank()));
    if (i.none())
        throw Error(ErrorCode::IndexZero, "the zero class has the empty cycle as its minimum");
    if (u >= c.vertex_count())
        throw Error(ErrorCode::BadParams, "start vertex " + std::to_string(u) + " out of range");
    if (L.size() != c.edge_count())
        throw Error(ErrorCode::DimensionMismatch, "weight function does not cover the edges");

    struct Label {
        CoveringVertex state;
        double dist;
        std::int64_t pred;
        bool settled;
    };
    std::vector<Label> labels;
    std::unordered_map<CoveringVertex, std::size_t, CoveringVertexHash> index;

    using Entry = std::tuple<double, VertexId, GroupElement, std::size_t>;
    auto later = [](const Entry& a, const Entry& b) {
        if (std::get<0>(a) != std::get<0>(b))
            return std::get<0>(a) > std::get<0>(b);
        if (std::get<1>(a) != std::get<1>(b))
            return std::get<1>(a) > std::get<1>(b);
        return std::get<2>(a) > std::get<2>(b);
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(later)> frontier(later);

    const CoveringVertex source{u, t.zero()};
    const CoveringVertex target{u, i};
    labels.push_back({source, 0.0, -1, true});
    index.emplace(source, 0);
    if (trace)
        trace->settled.emplace_back(source, 0.0);

    auto relax_from = [&](std::size_t from) {
        const CoveringVertex here = labels[from].state;
        const double base = labels[from].dist;
        const auto& nb = c.neighbors(here.base);
        const auto& ne = c.neighbor_edges(here.base);
        for (std::size_t k = 0; k < nb.size(); ++k) {
            CoveringVertex next{nb[k], here.sheet ^ t[ne[k]]};
            const double cand = base + L[ne[k]];
            auto [it, fresh] = index.try_emplace(next, labels.size());
            if (fresh) {
                labels.push_back({next, cand, static_cast<std::int64_t>(from), false});
                frontier.emplace(cand, next.base, next.sheet, it->second);
                continue;
            }
            Label& lab = labels[it->second];
            if (!lab.settled && cand < lab.dist) {
                lab.dist = cand;
                lab.pred = static_cast<std::int64_t>(from);
                frontier.emplace(cand, next.base, next.sheet, it->second);
            }
        }
    };

    relax_from(0);
    std::optional<std::size_t> reached;
    while (!frontier.empty()) {
        const auto [d, v, sheet, idx] = frontier.top();
        frontier.pop();
        Label& lab = labels[idx];
        if (lab.settled || d != lab.dist)
            continue;
        if (lab.state == target) {
            reached = idx;
            break;
        }
        lab.settled = true;
        if (trace)
            trace->settled.emplace_back(lab.state, lab.dist);
        relax_from(idx);
    }
    if (trace)
        trace->discovered = labels.size();
    if (!reached)
        throw Error(ErrorCode::Unreachable, "(" + std::to_string(u) + ", " + i.to_bits() +
                                                ") is not reachable from the start sheet");

    MinCycleResult res;
    res.class_index = i;
    res.start = u;
    res.path_weight = labels[*reached].dist;
    res.cycle = c.zero_chain(1);
    for (std::int64_t at = static_cast<std::int64_t>(*reached); at >= 0; at = labels[at].pred)
        res.witness.push_back(labels[at].state);
    std::reverse(res.witness.begin(), res.witness.end());
    for (std::size_t s = 1; s < res.witness.size(); ++s)
        res.cycle.toggle(*c.edge(res.witness[s - 1].base, res.witness[s].base));
    res.weight = chain_weight(L, res.cycle);
    return res;
}

/**
 * Lightest cycle homologous to x. `basis` are the (n-1)-cycles the table was
 * built from. The zero class returns the empty chain. Searches from the
 * vertices of the chosen basis cycle run on up to `jobs` threads; the lightest
 * result wins, ties going to the smaller start vertex.
 */
inline MinCycleResult min_cycle_in_class(const IndexTable& t, const SimplicialComplex& c, const WeightFunction& L,
                                         const std::vector<Chain>& basis, const Chain& x, std::size_t jobs = 1)
{
    if (x.dim != 1)
        throw Error(ErrorCode::BadDimension, "x must be a 1-chain");
    require_cycle(c, x, "x");
    if (basis.size() != t.rank())
        throw Error(ErrorCode::DimensionMismatch, "basis size differs from the index table rank");
    const GroupElement i = index_of_chain(t, x);
    if (i.none()) {
        MinCycleResult zero;
        zero.cycle = c.zero_chain(1);
        zero.class_index = i;
        return zero;
    }
    const std::size_t k = i.first_set();
    const std::vector<VertexId> starts = c.chain_vertices(basis[k]);
    std::vector<MinCycleResult> found(starts.size());
    parallel_for(starts.size(), jobs,
                 [&](std::size_t s) { found[s] = min_cycle_fixed_vertex_index(t, c, L, starts[s], i); });
    std::size_t best = 0;
    for (std::size_t s = 1; s < found.size(); ++s)
        if (found[s].weight < found[best].weight)
            best = s;
    return std::move(found[best]);
}

inline MinCycleResult min_cycle_in_class(const IndexTable& t, const SimplicialComplex& c, const WeightFunction& L,
                                         const HomologyBasis& basis, const Chain& x, std::size_t jobs = 1)
{
    return min_cycle_in_class(t, c, L, basis.cycles, x, jobs);
}

} // namespace mincyc

#endif
