#ifndef MINCYC_INDEX_FUNCTION_HPP
#define MINCYC_INDEX_FUNCTION_HPP

/**
 * Index function J : C_1(P) -> Z2^r relative to a basis of simple
 * (n-1)-cycles z_1..z_r.
 *
 * For each basis cycle, every vertex u of the cycle floods one local side of
 * the cycle inside the star of u, crossing (n-1)-faces that are not on the
 * cycle, and toggles coordinate k on the crossed edges [u,w] that are not
 * edges of the cycle. Edges of the cycle are then indexed by a triangle test
 * comparing the sides chosen at their two endpoints. The resulting per-edge
 * vectors vanish on every triangle boundary and, extended linearly, evaluate
 * the intersection index of a 1-cycle with each basis cycle.
 */

#include <algorithm>
#include <cstddef>
#include <deque>
#include <string>
#include <utility>
#include <vector>

#include "mincyc/complex.hpp"
#include "mincyc/error.hpp"
#include "mincyc/homology.hpp"
#include "mincyc/parallel.hpp"
#include "mincyc/z2_algebra.hpp"

namespace mincyc {

/// Element of Z2^r: a sheet of the covering, or a value of the index function.
using GroupElement = BitVector;

/// How a vertex pass contributes to J on the crossed edges [u,w].
enum class ToggleRule {
    /// Toggle J once per crossed face containing the edge; M_k(u) holds the
    /// edges toggled an odd number of times.
    PerCrossing,
    /// Toggle J once per edge reached by the pass; M_k(u) is the set of all
    /// reached edges. Coincides with PerCrossing for n = 2.
    PerPass,
};

struct VertexAudit {
    VertexId vertex = 0;
    std::vector<SimplexIndex> edges;      ///< M_k(u), ascending edge ids
    std::vector<SimplexIndex> simplices;  ///< Sigma_k(u), ascending top-simplex ids
    std::size_t seeds = 0;                ///< seeds tried before M_k(u) became nonempty
};

struct CycleAudit {
    Chain indexed_edges;                  ///< M_k
    std::vector<VertexAudit> vertices;    ///< one entry per vertex of z_k, ascending
    std::size_t faces_crossed = 0;        ///< total crossings over all vertex passes
    std::size_t max_crossings_per_face = 0; ///< within a single vertex pass
    std::size_t cycle_faces_crossed = 0;  ///< crossings of faces of z_k (always 0)
    std::size_t cycle_edges_indexed = 0;  ///< edges of z_k given J^k = 1 by the triangle test

    const VertexAudit* find(VertexId v) const
    {
        auto it = std::lower_bound(vertices.begin(), vertices.end(), v,
                                   [](const VertexAudit& a, VertexId x) { return a.vertex < x; });
        return it != vertices.end() && it->vertex == v ? &*it : nullptr;
    }
};

class IndexTable {
public:
    IndexTable() = default;
    IndexTable(std::size_t r, std::size_t edge_count) : r_(r), values_(edge_count, GroupElement(r)), audits_(r) {}

    std::size_t rank() const noexcept { return r_; }
    std::size_t edge_count() const noexcept { return values_.size(); }

    const GroupElement& operator[](SimplexIndex edge) const { return values_.at(edge); }
    GroupElement zero() const { return GroupElement(r_); }

    const std::vector<CycleAudit>& audits() const noexcept { return audits_; }
    const CycleAudit& audit(std::size_t k) const { return audits_.at(k); }

    /// Installs coordinate k from a per-edge bit plane.
    void set_plane(std::size_t k, const BitVector& plane, CycleAudit audit)
    {
        plane.for_each_set([&](std::size_t e) { values_[e].set(k); });
        audits_[k] = std::move(audit);
    }

    friend bool operator==(const IndexTable& a, const IndexTable& b)
    {
        if (a.r_ != b.r_ || a.values_ != b.values_ || a.audits_.size() != b.audits_.size())
            return false;
        for (std::size_t k = 0; k < a.audits_.size(); ++k) {
            const auto& x = a.audits_[k];
            const auto& y = b.audits_[k];
            if (!(x.indexed_edges == y.indexed_edges) || x.vertices.size() != y.vertices.size())
                return false;
            for (std::size_t i = 0; i < x.vertices.size(); ++i)
                if (x.vertices[i].vertex != y.vertices[i].vertex || x.vertices[i].edges != y.vertices[i].edges ||
                    x.vertices[i].simplices != y.vertices[i].simplices)
                    return false;
        }
        return true;
    }

private:
    std::size_t r_ = 0;
    std::vector<GroupElement> values_;
    std::vector<CycleAudit> audits_;
};

namespace detail {

struct PassResult {
    BitVector plane;
    CycleAudit audit;
};

inline BitVector cycle_edge_set(const SimplicialComplex& c, const Chain& z)
{
    BitVector edges(c.edge_count());
    z.bits.for_each_set([&](std::size_t i) {
        const auto& s = c.simplex(z.dim, static_cast<SimplexIndex>(i));
        for (std::size_t a = 0; a < s.size(); ++a)
            for (std::size_t b = a + 1; b < s.size(); ++b)
                edges.set(*c.edge(s[a], s[b]));
    });
    return edges;
}

/// One basis cycle: the flood fills around each of its vertices, then the
/// triangle test on its own edges.
inline PassResult index_pass(const SimplicialComplex& c, const Chain& z, ToggleRule rule)
{
    const int n = c.dimension();
    const std::size_t edge_total = c.edge_count();
    PassResult out{BitVector(edge_total), CycleAudit{c.zero_chain(1), {}, 0, 0, 0, 0}};
    const BitVector cycle_edges = cycle_edge_set(c, z);

    // Scratch arrays indexed globally, reset through touched lists.
    std::vector<int> local_of(c.count(n), -1);
    std::vector<unsigned> crossed(c.count(n - 1), 0);
    std::vector<unsigned> toggles(edge_total, 0);
    std::vector<SimplexIndex> touched_faces;
    std::vector<SimplexIndex> touched_edges;

    for (VertexId u : c.chain_vertices(z)) {
        const auto& star = c.star(u);
        for (std::size_t i = 0; i < star.size(); ++i)
            local_of[star[i]] = static_cast<int>(i);
        std::vector<char> remaining(star.size(), 1);
        std::vector<char> visited(star.size(), 0);
        std::vector<char> in_sigma(star.size(), 0);
        VertexAudit va;
        va.vertex = u;

        auto collect_side = [&] {
            std::vector<SimplexIndex> side;
            for (SimplexIndex e : touched_edges) {
                const bool member = rule == ToggleRule::PerCrossing ? (toggles[e] % 2 == 1) : toggles[e] > 0;
                if (member)
                    side.push_back(e);
            }
            std::sort(side.begin(), side.end());
            side.erase(std::unique(side.begin(), side.end()), side.end());
            return side;
        };

        std::size_t next_seed = 0;
        while (true) {
            while (next_seed < star.size() && !remaining[next_seed])
                ++next_seed;
            if (next_seed == star.size())
                break;
            // Lowest remaining top simplex seeds the flood; it belongs to its own side.
            const std::size_t seed = next_seed;
            remaining[seed] = 0;
            visited[seed] = 1;
            in_sigma[seed] = 1;
            ++va.seeds;
            std::deque<std::size_t> queue{seed};
            while (!queue.empty()) {
                const std::size_t cur = queue.front();
                queue.pop_front();
                const SimplexIndex sigma = star[cur];
                for (SimplexIndex f : c.faces(n, sigma)) {
                    if (z.contains(f) || crossed[f] > 0)
                        continue;
                    int other = -1;
                    for (SimplexIndex t : c.cofaces(n - 1, f))
                        if (t != sigma && local_of[t] >= 0) {
                            other = local_of[t];
                            break;
                        }
                    if (other < 0)
                        continue;
                    remaining[other] = 0;
                    in_sigma[other] = 1;
                    if (!visited[other]) {
                        visited[other] = 1;
                        queue.push_back(static_cast<std::size_t>(other));
                    }
                    if (crossed[f]++ == 0)
                        touched_faces.push_back(f);
                    out.audit.max_crossings_per_face = std::max<std::size_t>(out.audit.max_crossings_per_face, crossed[f]);
                    ++out.audit.faces_crossed;
                    for (VertexId w : c.simplex(n - 1, f)) {
                        if (w == u)
                            continue;
                        const SimplexIndex a = *c.edge(u, w);
                        if (cycle_edges.test(a))
                            continue;
                        if (toggles[a]++ == 0)
                            touched_edges.push_back(a);
                        if (rule == ToggleRule::PerCrossing) {
                            out.plane.flip(a);
                            out.audit.indexed_edges.toggle(a);
                        }
                    }
                }
            }
            if (!collect_side().empty())
                break;
        }

        va.edges = collect_side();
        if (va.edges.empty())
            throw Error(ErrorCode::EmptyLocalSide, "no indexable edge found around vertex " + std::to_string(u));
        if (rule == ToggleRule::PerPass) {
            for (SimplexIndex a : va.edges) {
                out.plane.flip(a);
                out.audit.indexed_edges.toggle(a);
            }
        }
        for (std::size_t i = 0; i < star.size(); ++i)
            if (in_sigma[i])
                va.simplices.push_back(star[i]);
        out.audit.vertices.push_back(std::move(va));

        for (SimplexIndex t : star)
            local_of[t] = -1;
        for (SimplexIndex f : touched_faces)
            crossed[f] = 0;
        for (SimplexIndex e : touched_edges)
            toggles[e] = 0;
        touched_faces.clear();
        touched_edges.clear();
    }

    // Cycle edges: J^k(a) = 1 unless some triangle [u v w] has [u w] in
    // M_k(u) and [v w] in M_k(v).
    auto in_side = [&](VertexId v, SimplexIndex e) {
        const VertexAudit* va = out.audit.find(v);
        return va && std::binary_search(va->edges.begin(), va->edges.end(), e);
    };
    cycle_edges.for_each_set([&](std::size_t ai) {
        const auto a = static_cast<SimplexIndex>(ai);
        const VertexId u = c.simplex(1, a)[0];
        const VertexId v = c.simplex(1, a)[1];
        bool paired = false;
        if (n >= 2) {
            for (SimplexIndex t : c.cofaces(1, a)) {
                const auto& tri = c.simplex(2, t);
                const VertexId w = tri[0] != u && tri[0] != v ? tri[0] : (tri[1] != u && tri[1] != v ? tri[1] : tri[2]);
                if (in_side(u, *c.edge(u, w)) && in_side(v, *c.edge(v, w))) {
                    paired = true;
                    break;
                }
            }
        }
        if (!paired) {
            out.plane.set(a);
            out.audit.indexed_edges.toggle(a);
            ++out.audit.cycle_edges_indexed;
        }
    });
    return out;
}

inline void require_simple(const SimplicialComplex& c, const Chain& z, std::size_t k)
{
    if (z.dim != c.dimension() - 1)
        throw Error(ErrorCode::BadDimension, "basis cycle #" + std::to_string(k) + " must have dimension n-1");
    require_cycle(c, z, ("basis cycle #" + std::to_string(k)).c_str());
    if (!is_simple_cycle(c, z))
        throw Error(ErrorCode::NotSimpleBasis, "basis cycle #" + std::to_string(k) + " is not simple");
}

} // namespace detail

/**
 * Builds the index table for a list of simple (n-1)-cycles. The cycles need
 * not form a basis; each one contributes its own coordinate. Passes are
 * independent and run on up to `jobs` threads.
 */
inline IndexTable build_index_function(const SimplicialComplex& c, const std::vector<Chain>& cycles,
                                       ToggleRule rule = ToggleRule::PerPass, std::size_t jobs = 1)
{
    if (c.dimension() < 2 && !cycles.empty())
        throw Error(ErrorCode::BadDimension, "index function needs n >= 2");
    for (std::size_t k = 0; k < cycles.size(); ++k)
        detail::require_simple(c, cycles[k], k);
    std::vector<detail::PassResult> passes(cycles.size());
    parallel_for(cycles.size(), jobs, [&](std::size_t k) { passes[k] = detail::index_pass(c, cycles[k], rule); });
    IndexTable table(cycles.size(), c.edge_count());
    for (std::size_t k = 0; k < passes.size(); ++k)
        table.set_plane(k, passes[k].plane, std::move(passes[k].audit));
    return table;
}

inline IndexTable build_index_function(const SimplicialComplex& c, const HomologyBasis& basis,
                                       ToggleRule rule = ToggleRule::PerPass, std::size_t jobs = 1)
{
    return build_index_function(c, basis.cycles, rule, jobs);
}

/// J(x): XOR of the per-edge vectors over the edges of x.
inline GroupElement index_of_chain(const IndexTable& t, const Chain& x)
{
    if (x.dim != 1 || x.bits.size() != t.edge_count())
        throw Error(ErrorCode::DimensionMismatch, "index_of_chain expects a 1-chain of the same complex");
    GroupElement g = t.zero();
    x.bits.for_each_set([&](std::size_t e) { g ^= t[static_cast<SimplexIndex>(e)]; });
    return g;
}

/// Intersection index of a 1-cycle x with one simple (n-1)-cycle z.
inline bool single_cycle_index(const SimplicialComplex& c, const Chain& z, const Chain& x,
                               ToggleRule rule = ToggleRule::PerPass)
{
    if (x.dim != 1)
        throw Error(ErrorCode::BadDimension, "x must be a 1-chain");
    require_cycle(c, x, "x");
    if (z.dim != c.dimension() - 1)
        throw Error(ErrorCode::BadDimension, "z must be an (n-1)-chain");
    require_cycle(c, z, "z");
    if (!is_simple_cycle(c, z))
        throw Error(ErrorCode::NotSimple, "z is not a simple cycle");
    const IndexTable t = build_index_function(c, std::vector<Chain>{z}, rule);
    return index_of_chain(t, x).test(0);
}

} // namespace mincyc

#endif
