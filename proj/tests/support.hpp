#ifndef MINCYC_TESTS_SUPPORT_HPP
#define MINCYC_TESTS_SUPPORT_HPP

// Test-only reference computations, written without the library's algebra.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "mincyc.hpp"

namespace support {

using mincyc::Chain;
using mincyc::SimplicialComplex;
using mincyc::VertexId;

using Dense = std::vector<std::vector<int>>;

/// Rank over GF(2) by textbook elimination on an int matrix.
inline std::size_t naive_rank(Dense m)
{
    std::size_t rank = 0;
    const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot][col] % 2 == 0)
            ++pivot;
        if (pivot == rows)
            continue;
        std::swap(m[pivot], m[rank]);
        for (std::size_t r = 0; r < rows; ++r)
            if (r != rank && m[r][col] % 2 != 0)
                for (std::size_t c = 0; c < cols; ++c)
                    m[r][c] = (m[r][c] + m[rank][c]) % 2;
        ++rank;
    }
    return rank;
}

/// Boundary matrix d_k built directly from vertex lists (rows: (k-1)-simplices).
inline Dense naive_boundary(const SimplicialComplex& c, int k)
{
    const auto& lower = c.simplices(k - 1);
    const auto& upper = c.simplices(k);
    Dense m(lower.size(), std::vector<int>(upper.size(), 0));
    for (std::size_t j = 0; j < upper.size(); ++j)
        for (std::size_t drop = 0; drop < upper[j].size(); ++drop) {
            mincyc::Simplex face;
            for (std::size_t i = 0; i < upper[j].size(); ++i)
                if (i != drop)
                    face.push_back(upper[j][i]);
            const auto it = std::lower_bound(lower.begin(), lower.end(), face);
            m[static_cast<std::size_t>(it - lower.begin())][j] ^= 1;
        }
    return m;
}

inline std::size_t naive_betti(const SimplicialComplex& c, int k)
{
    const std::size_t cells = c.count(k);
    const std::size_t rk = k > 0 ? naive_rank(naive_boundary(c, k)) : 0;
    const std::size_t rk1 = k < c.dimension() ? naive_rank(naive_boundary(c, k + 1)) : 0;
    return cells - rk - rk1;
}

using Bits = std::vector<bool>;

inline Bits bits_of(const Chain& x)
{
    Bits b(x.bits.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        b[i] = x.bits.test(i);
    return b;
}

/// Every element of the 1-boundary space, by closing {0} under adding triangle boundaries.
inline std::set<Bits> boundary_span(const SimplicialComplex& c)
{
    std::vector<Bits> gens;
    for (const auto& t : c.simplices(2)) {
        Bits g(c.edge_count());
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                g[*c.edge(t[i], t[j])] = !g[*c.edge(t[i], t[j])];
        gens.push_back(g);
    }
    std::set<Bits> span{Bits(c.edge_count())};
    std::deque<Bits> todo{Bits(c.edge_count())};
    while (!todo.empty()) {
        Bits cur = todo.front();
        todo.pop_front();
        for (const auto& g : gens) {
            Bits next = cur;
            for (std::size_t i = 0; i < next.size(); ++i)
                next[i] = next[i] != g[i];
            if (span.insert(next).second)
                todo.push_back(next);
        }
    }
    return span;
}

/// Random element of the cycle space: XOR of closed walks built from
/// random walks closed up along breadth-first paths.
inline std::vector<VertexId> bfs_path(const SimplicialComplex& c, VertexId from, VertexId to)
{
    std::vector<long> pred(c.vertex_count(), -1);
    std::deque<VertexId> q{from};
    pred[from] = from;
    while (!q.empty()) {
        VertexId v = q.front();
        q.pop_front();
        if (v == to)
            break;
        for (VertexId w : c.neighbors(v))
            if (pred[w] < 0) {
                pred[w] = v;
                q.push_back(w);
            }
    }
    std::vector<VertexId> path{to};
    while (path.back() != from)
        path.push_back(static_cast<VertexId>(pred[path.back()]));
    std::reverse(path.begin(), path.end());
    return path;
}

inline std::vector<VertexId> random_walk(const SimplicialComplex& c, VertexId start, std::size_t steps, std::mt19937_64& rng)
{
    std::vector<VertexId> walk{start};
    for (std::size_t s = 0; s < steps; ++s) {
        const auto& nb = c.neighbors(walk.back());
        walk.push_back(nb[rng() % nb.size()]);
    }
    return walk;
}

/// Closed walk from `start`: random steps, then back along a shortest path.
inline std::vector<VertexId> random_loop(const SimplicialComplex& c, VertexId start, std::mt19937_64& rng)
{
    auto walk = random_walk(c, start, 1 + rng() % (2 * c.vertex_count()), rng);
    const auto back = bfs_path(c, walk.back(), start);
    walk.insert(walk.end(), back.begin() + 1, back.end());
    return walk;
}

inline Chain random_cycle(const SimplicialComplex& c, std::mt19937_64& rng)
{
    Chain x = c.zero_chain(1);
    const std::size_t loops = 1 + rng() % 3;
    for (std::size_t i = 0; i < loops; ++i) {
        const auto loop = random_loop(c, static_cast<VertexId>(rng() % c.vertex_count()), rng);
        x += c.path_chain(loop);
    }
    return x;
}

inline std::vector<mincyc::gen::MeshBundle> surfaces()
{
    using namespace mincyc::gen;
    return {sphere_tet(), rp2_6(), torus_grid(3, 3), klein_grid(3, 3), klein_grid(4, 4), genus2_polygon()};
}

inline std::vector<mincyc::gen::MeshBundle> all_meshes()
{
    auto m = surfaces();
    m.push_back(mincyc::gen::torus3_grid(3, 3, 3));
    return m;
}

inline mincyc::GroupElement group_element(const std::string& bits) { return mincyc::BitVector::from_bits(bits); }

/// Result of checking (C1)-(C3) and the fiber sizes on a materialized cover.
struct CoverAxioms {
    bool c1 = true;
    bool c2 = true;
    bool c3 = true;
    bool fibers = true;
    std::string failure;
};

/// Exhaustive checks on every simplex of every dimension.
inline CoverAxioms check_cover_axioms(const mincyc::IndexTable& t, const SimplicialComplex& c,
                                      const mincyc::MaterializedCover& m)
{
    CoverAxioms out;
    const std::size_t sheets = m.sheets;
    std::vector<mincyc::GroupElement> group;
    for (std::uint64_t g = 0; g < sheets; ++g) {
        mincyc::GroupElement e(m.rank);
        for (std::size_t k = 0; k < m.rank; ++k)
            if ((g >> k) & 1U)
                e.set(k);
        group.push_back(e);
    }
    std::vector<std::size_t> fiber(c.vertex_count(), 0);
    for (VertexId v = 0; v < m.complex.vertex_count(); ++v)
        ++fiber[m.vertex(v).base];
    for (VertexId v = 0; v < c.vertex_count(); ++v)
        if (fiber[v] != sheets) {
            out.fibers = false;
            out.failure = "fiber over " + std::to_string(v);
        }

    for (int k = 0; k <= c.dimension(); ++k) {
        std::map<mincyc::Simplex, std::vector<mincyc::Simplex>> over;
        for (const auto& s : m.complex.simplices(k)) {
            if (!mincyc::is_covering_simplex(t, c, [&] {
                    std::vector<mincyc::CoveringVertex> vs;
                    for (VertexId v : s)
                        vs.push_back(m.vertex(v));
                    return vs;
                }())) {
                out.c1 = false;
                out.failure = "cover simplex violates U1/U2";
            }
            over[m.project(s)].push_back(s);
        }
        for (const auto& base : c.simplices(k)) {
            const auto& lifts = over[base];
            // C1: each lifted vertex over a vertex of the base lies in exactly one lift.
            for (VertexId b : base)
                for (const auto& g : group) {
                    const VertexId lv = m.id({b, g});
                    std::size_t hits = 0;
                    for (const auto& l : lifts)
                        hits += std::count(l.begin(), l.end(), lv) ? 1 : 0;
                    if (hits != 1) {
                        out.c1 = false;
                        out.failure = "C1 at " + mincyc::format_simplex(base);
                    }
                }
            for (const auto& l : lifts) {
                // C2: only the identity fixes a covering simplex.
                for (std::size_t gi = 1; gi < group.size(); ++gi) {
                    mincyc::Simplex moved;
                    for (VertexId v : l)
                        moved.push_back(m.act(group[gi], v));
                    std::sort(moved.begin(), moved.end());
                    if (moved == l) {
                        out.c2 = false;
                        out.failure = "C2 at " + mincyc::format_simplex(base);
                    }
                }
                // C3: equal projections iff related by a deck element.
                for (const auto& other : lifts) {
                    bool related = false;
                    for (const auto& g : group) {
                        mincyc::Simplex moved;
                        for (VertexId v : l)
                            moved.push_back(m.act(g, v));
                        std::sort(moved.begin(), moved.end());
                        related = related || moved == other;
                    }
                    if (!related) {
                        out.c3 = false;
                        out.failure = "C3 at " + mincyc::format_simplex(base);
                    }
                }
            }
        }
        // Deck images of cover simplices are cover simplices.
        for (const auto& s : m.complex.simplices(k))
            for (const auto& g : group) {
                mincyc::Simplex moved;
                for (VertexId v : s)
                    moved.push_back(m.act(g, v));
                std::sort(moved.begin(), moved.end());
                if (!m.complex.find(moved)) {
                    out.c3 = false;
                    out.failure = "deck image missing at " + mincyc::format_simplex(s);
                }
            }
    }
    return out;
}

} // namespace support

#endif
