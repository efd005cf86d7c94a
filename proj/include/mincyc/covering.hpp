#ifndef MINCYC_COVERING_HPP
#define MINCYC_COVERING_HPP

/**
 * The regular covering with deck group G = Z2^r determined by an index table.
 *
 * Covering vertices are pairs (v, g) in V x G. A set of them spans a simplex
 * of the cover when the base vertices span a simplex s of P and, with v0 the
 * first vertex of s, g0 + gi = J([v0 vi]) for every other vertex vi. The
 * cover is only ever walked implicitly through covering_neighbors; explicit
 * materialization exists for verifying the covering axioms on small inputs.
 */

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mincyc/complex.hpp"
#include "mincyc/error.hpp"
#include "mincyc/index_function.hpp"

namespace mincyc {

struct CoveringVertex {
    VertexId base = 0;
    GroupElement sheet;

    friend bool operator==(const CoveringVertex&, const CoveringVertex&) = default;
    friend std::strong_ordering operator<=>(const CoveringVertex& a, const CoveringVertex& b)
    {
        if (auto c = a.base <=> b.base; c != 0)
            return c;
        return a.sheet <=> b.sheet;
    }
};

struct CoveringVertexHash {
    std::size_t operator()(const CoveringVertex& v) const noexcept
    {
        return v.sheet.hash() * 1000003u ^ static_cast<std::size_t>(v.base);
    }
};

/// (w, sheet + J([base, w])) for every base neighbor w, in base adjacency order.
inline std::vector<CoveringVertex> covering_neighbors(const IndexTable& t, const SimplicialComplex& c,
                                                      const CoveringVertex& v)
{
    const auto& nb = c.neighbors(v.base);
    const auto& ne = c.neighbor_edges(v.base);
    std::vector<CoveringVertex> out;
    out.reserve(nb.size());
    for (std::size_t i = 0; i < nb.size(); ++i)
        out.push_back({nb[i], v.sheet ^ t[ne[i]]});
    return out;
}

/// Lifts an edge path starting on sheet g0; entry i is (w_i, g0 + J(first i edges)).
inline std::vector<CoveringVertex> lift_path(const IndexTable& t, const SimplicialComplex& c,
                                             std::span<const VertexId> path, const GroupElement& g0)
{
    if (g0.size() != t.rank())
        throw Error(ErrorCode::DimensionMismatch, "start sheet has the wrong length");
    std::vector<CoveringVertex> out;
    if (path.empty())
        return out;
    out.reserve(path.size());
    out.push_back({path[0], g0});
    for (std::size_t i = 1; i < path.size(); ++i) {
        auto e = c.edge(path[i - 1], path[i]);
        if (!e)
            throw Error(ErrorCode::NotAPath, "vertices " + std::to_string(path[i - 1]) + " and " +
                                                 std::to_string(path[i]) + " are not adjacent");
        out.push_back({path[i], out.back().sheet ^ t[*e]});
    }
    return out;
}

/// Deck transformation: translate the sheet by g.
inline CoveringVertex deck_act(const GroupElement& g, const CoveringVertex& v)
{
    if (g.size() != v.sheet.size())
        throw Error(ErrorCode::DimensionMismatch, "deck element and sheet lengths differ");
    return {v.base, g ^ v.sheet};
}

/// Whether a set of covering vertices spans a simplex of the cover.
inline bool is_covering_simplex(const IndexTable& t, const SimplicialComplex& c, std::vector<CoveringVertex> vs)
{
    if (vs.empty())
        return false;
    std::sort(vs.begin(), vs.end());
    Simplex base;
    for (const auto& v : vs)
        base.push_back(v.base);
    if (std::adjacent_find(base.begin(), base.end()) != base.end() || !c.find(base))
        return false;
    for (std::size_t i = 1; i < vs.size(); ++i)
        if ((vs[0].sheet ^ vs[i].sheet) != t[*c.edge(vs[0].base, vs[i].base)])
            return false;
    return true;
}

/// Lifted vertex ids are base * 2^r + sheet, reading the sheet as an integer
/// whose bit k is coordinate k.
struct MaterializedCover {
    SimplicialComplex complex;
    std::size_t rank = 0;
    std::size_t sheets = 1;

    CoveringVertex vertex(VertexId lifted) const
    {
        GroupElement g(rank);
        const std::uint64_t bits = lifted % sheets;
        for (std::size_t k = 0; k < rank; ++k)
            if ((bits >> k) & 1U)
                g.set(k);
        return {static_cast<VertexId>(lifted / sheets), g};
    }

    VertexId id(const CoveringVertex& v) const
    {
        std::uint64_t bits = 0;
        v.sheet.for_each_set([&](std::size_t k) { bits |= std::uint64_t{1} << k; });
        return static_cast<VertexId>(v.base * sheets + bits);
    }

    /// Base simplex (sorted vertex list) under the projection.
    Simplex project(std::span<const VertexId> lifted) const
    {
        Simplex s;
        for (VertexId v : lifted)
            s.push_back(static_cast<VertexId>(v / sheets));
        std::sort(s.begin(), s.end());
        return s;
    }

    /// Sheet translation as a map on lifted vertex ids.
    VertexId act(const GroupElement& g, VertexId lifted) const { return id(deck_act(g, vertex(lifted))); }
};

/// Every lift of the base k-simplices: for each simplex s and each sheet g0 of
/// its first vertex, the unique covering simplex through (s[0], g0).
inline std::vector<Simplex> lifted_simplices(const IndexTable& t, const SimplicialComplex& c, int k, std::size_t sheets)
{
    std::vector<Simplex> out;
    out.reserve(c.count(k) * sheets);
    std::vector<std::uint64_t> offset;
    for (const auto& s : c.simplices(k)) {
        offset.assign(s.size(), 0);
        for (std::size_t i = 1; i < s.size(); ++i)
            t[*c.edge(s[0], s[i])].for_each_set([&](std::size_t b) { offset[i] |= std::uint64_t{1} << b; });
        for (std::uint64_t g0 = 0; g0 < sheets; ++g0) {
            Simplex lifted;
            for (std::size_t i = 0; i < s.size(); ++i)
                lifted.push_back(static_cast<VertexId>(s[i] * sheets + (g0 ^ offset[i])));
            std::sort(lifted.begin(), lifted.end());
            out.push_back(std::move(lifted));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Explicit cover, for verification only. The complex is the closure of the
/// lifted top simplices; throws BudgetExceeded when 2^r times the number of
/// base simplices exceeds max_cells.
inline MaterializedCover materialize_cover(const IndexTable& t, const SimplicialComplex& c,
                                           std::size_t max_cells = 1'000'000)
{
    const std::size_t r = t.rank();
    std::size_t base_cells = 0;
    for (int k = 0; k <= c.dimension(); ++k)
        base_cells += c.count(k);
    if (r >= 32 || (base_cells << r) > max_cells || (base_cells << r) >> r != base_cells)
        throw Error(ErrorCode::BudgetExceeded, "cover with 2^" + std::to_string(r) + " sheets over " +
                                                   std::to_string(base_cells) + " cells exceeds budget " +
                                                   std::to_string(max_cells));
    MaterializedCover m;
    m.rank = r;
    m.sheets = std::size_t{1} << r;
    m.complex = build_complex(c.dimension(), lifted_simplices(t, c, c.dimension(), m.sheets), c.vertex_count() * m.sheets);
    return m;
}

} // namespace mincyc

#endif
