#ifndef MINCYC_COMPLEX_HPP
#define MINCYC_COMPLEX_HPP

/**
 * Simplicial schemes of closed pseudomanifolds, mod-2 chains and boundaries.
 *
 * A complex is built from its top-dimensional simplices. Every face is
 * generated, and the simplices of each dimension are kept sorted
 * lexicographically by vertex list; a simplex's index is its position in that
 * table, so indexing is a pure function of the input.
 */

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mincyc/error.hpp"
#include "mincyc/z2_algebra.hpp"

namespace mincyc {

using VertexId = std::uint32_t;
using SimplexIndex = std::uint32_t;

/// Sorted, duplicate-free vertex list.
using Simplex = std::vector<VertexId>;

inline std::string format_simplex(std::span<const VertexId> s)
{
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i)
            out += ' ';
        out += std::to_string(s[i]);
    }
    return out + "]";
}

/// A mod-2 k-chain: membership bits over the k-simplex table.
struct Chain {
    int dim = 0;
    BitVector bits;

    Chain() = default;
    Chain(int d, std::size_t simplex_count) : dim(d), bits(simplex_count) {}
    Chain(int d, BitVector b) : dim(d), bits(std::move(b)) {}

    bool empty() const noexcept { return bits.none(); }
    std::size_t size() const noexcept { return bits.count(); }
    bool contains(SimplexIndex s) const noexcept { return bits.test(s); }
    void toggle(SimplexIndex s) noexcept { bits.flip(s); }

    std::vector<SimplexIndex> members() const
    {
        std::vector<SimplexIndex> out;
        bits.for_each_set([&](std::size_t i) { out.push_back(static_cast<SimplexIndex>(i)); });
        return out;
    }

    Chain& operator+=(const Chain& other)
    {
        if (other.dim != dim)
            throw Error(ErrorCode::BadDimension, "cannot add chains of dimension " + std::to_string(dim) +
                                                     " and " + std::to_string(other.dim));
        bits ^= other.bits;
        return *this;
    }
    friend Chain operator+(Chain a, const Chain& b) { return a += b; }
    friend bool operator==(const Chain&, const Chain&) = default;
};

class SimplicialComplex {
public:
    SimplicialComplex() = default;

    int dimension() const noexcept { return n_; }
    std::size_t vertex_count() const noexcept { return vertex_count_; }
    std::size_t count(int k) const { return table(k).size(); }
    std::size_t edge_count() const { return count(1); }

    const std::vector<Simplex>& simplices(int k) const { return table(k); }
    const Simplex& simplex(int k, SimplexIndex i) const { return table(k).at(i); }

    std::optional<SimplexIndex> find(std::span<const VertexId> sorted_vertices) const
    {
        const int k = static_cast<int>(sorted_vertices.size()) - 1;
        if (k < 0 || k > n_)
            return std::nullopt;
        const auto& t = tables_[k];
        auto it = std::lower_bound(t.begin(), t.end(), sorted_vertices, [](const Simplex& a, std::span<const VertexId> b) {
            return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
        });
        if (it == t.end() || !std::equal(it->begin(), it->end(), sorted_vertices.begin(), sorted_vertices.end()))
            return std::nullopt;
        return static_cast<SimplexIndex>(it - t.begin());
    }

    /// Index of a simplex given in any vertex order; throws UnknownSimplex.
    SimplexIndex index_of(Simplex vertices) const
    {
        std::sort(vertices.begin(), vertices.end());
        auto idx = find(vertices);
        if (!idx)
            throw Error(ErrorCode::UnknownSimplex, "simplex " + format_simplex(vertices) + " is not in the complex");
        return *idx;
    }

    std::optional<SimplexIndex> edge(VertexId u, VertexId v) const
    {
        if (u > v)
            std::swap(u, v);
        const VertexId e[2] = {u, v};
        return find(e);
    }

    /// Facets of a k-simplex (k >= 1), listed by omitted vertex position.
    const std::vector<SimplexIndex>& faces(int k, SimplexIndex i) const { return faces_.at(k).at(i); }

    /// (k+1)-simplices having the k-simplex as a face, ascending.
    const std::vector<SimplexIndex>& cofaces(int k, SimplexIndex i) const { return cofaces_.at(k).at(i); }

    /// Adjacent vertices of v, ascending; neighbor_edges(v)[j] is the edge to neighbors(v)[j].
    const std::vector<VertexId>& neighbors(VertexId v) const { return neighbors_.at(v); }
    const std::vector<SimplexIndex>& neighbor_edges(VertexId v) const { return neighbor_edges_.at(v); }

    /// Top simplices containing v, ascending.
    const std::vector<SimplexIndex>& star(VertexId v) const { return star_.at(v); }

    Chain zero_chain(int k) const { return Chain(k, count(k)); }

    Chain chain_of(int k, std::span<const SimplexIndex> members) const
    {
        Chain c = zero_chain(k);
        for (SimplexIndex s : members)
            c.toggle(s);
        return c;
    }

    /// Chain from vertex tuples (any order within a tuple); repeated simplices cancel.
    Chain chain_from_simplices(int k, const std::vector<Simplex>& simplices) const
    {
        Chain c = zero_chain(k);
        for (const auto& s : simplices) {
            if (static_cast<int>(s.size()) != k + 1)
                throw Error(ErrorCode::BadArity, "expected " + std::to_string(k + 1) + " vertices, got " +
                                                     format_simplex(s));
            c.toggle(index_of(s));
        }
        return c;
    }

    /// Mod-2 chain of an edge path given as its vertex sequence.
    Chain path_chain(std::span<const VertexId> path) const
    {
        Chain c = zero_chain(1);
        for (std::size_t i = 1; i < path.size(); ++i) {
            auto e = edge(path[i - 1], path[i]);
            if (!e)
                throw Error(ErrorCode::NotAPath, "vertices " + std::to_string(path[i - 1]) + " and " +
                                                     std::to_string(path[i]) + " are not adjacent");
            c.toggle(*e);
        }
        return c;
    }

    /// Vertices touched by the simplices of a chain, ascending.
    std::vector<VertexId> chain_vertices(const Chain& c) const
    {
        std::vector<bool> seen(vertex_count_, false);
        c.bits.for_each_set([&](std::size_t i) {
            for (VertexId v : table(c.dim)[i])
                seen[v] = true;
        });
        std::vector<VertexId> out;
        for (VertexId v = 0; v < vertex_count_; ++v)
            if (seen[v])
                out.push_back(v);
        return out;
    }

    long long euler_characteristic() const
    {
        long long chi = 0;
        for (int k = 0; k <= n_; ++k)
            chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(count(k));
        return chi;
    }

    friend SimplicialComplex build_complex(int n, std::vector<Simplex> top, std::optional<std::size_t> vertex_count);

private:
    const std::vector<Simplex>& table(int k) const
    {
        if (k < 0 || k > n_)
            throw Error(ErrorCode::BadDimension, "dimension " + std::to_string(k) + " outside 0.." + std::to_string(n_));
        return tables_[k];
    }

    int n_ = 0;
    std::size_t vertex_count_ = 0;
    std::vector<std::vector<Simplex>> tables_;
    std::vector<std::vector<std::vector<SimplexIndex>>> faces_;   // faces_[k][i], k >= 1
    std::vector<std::vector<std::vector<SimplexIndex>>> cofaces_; // cofaces_[k][i], k < n
    std::vector<std::vector<VertexId>> neighbors_;
    std::vector<std::vector<SimplexIndex>> neighbor_edges_;
    std::vector<std::vector<SimplexIndex>> star_;
};

/**
 * Builds the downward closure of a set of n-simplices.
 *
 * Vertex ids must be dense; vertex_count defaults to one past the largest id.
 * Throws BadArity when a tuple does not have n+1 distinct vertices and
 * DuplicateSimplex when the same top simplex is listed twice.
 */
inline SimplicialComplex build_complex(int n, std::vector<Simplex> top,
                                       std::optional<std::size_t> vertex_count = std::nullopt)
{
    if (n < 0)
        throw Error(ErrorCode::BadDimension, "negative dimension");
    std::size_t max_vertex = 0;
    for (std::size_t t = 0; t < top.size(); ++t) {
        auto& s = top[t];
        if (static_cast<int>(s.size()) != n + 1)
            throw Error(ErrorCode::BadArity, "top simplex #" + std::to_string(t) + " has " + std::to_string(s.size()) +
                                                 " vertices, expected " + std::to_string(n + 1));
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw Error(ErrorCode::BadArity, "top simplex " + format_simplex(s) + " repeats a vertex");
        max_vertex = std::max<std::size_t>(max_vertex, s.back() + 1);
    }
    std::sort(top.begin(), top.end());
    if (auto it = std::adjacent_find(top.begin(), top.end()); it != top.end())
        throw Error(ErrorCode::DuplicateSimplex, "top simplex " + format_simplex(*it) + " listed twice");

    SimplicialComplex c;
    c.n_ = n;
    c.vertex_count_ = top.empty() ? 0 : max_vertex;
    if (vertex_count) {
        if (*vertex_count < c.vertex_count_)
            throw Error(ErrorCode::BadParams, "vertex count " + std::to_string(*vertex_count) +
                                                  " smaller than largest vertex id + 1");
        c.vertex_count_ = *vertex_count;
    }

    c.tables_.assign(n + 1, {});
    c.tables_[n] = std::move(top);
    for (int k = n; k >= 1; --k) {
        auto& lower = c.tables_[k - 1];
        for (const auto& s : c.tables_[k]) {
            for (std::size_t drop = 0; drop < s.size(); ++drop) {
                Simplex f;
                f.reserve(s.size() - 1);
                for (std::size_t j = 0; j < s.size(); ++j)
                    if (j != drop)
                        f.push_back(s[j]);
                lower.push_back(std::move(f));
            }
        }
        std::sort(lower.begin(), lower.end());
        lower.erase(std::unique(lower.begin(), lower.end()), lower.end());
    }
    // Vertices are listed even when isolated so that ids stay dense.
    c.tables_[0].clear();
    for (VertexId v = 0; v < c.vertex_count_; ++v)
        c.tables_[0].push_back({v});

    c.faces_.assign(n + 1, {});
    c.cofaces_.assign(n + 1, {});
    for (int k = 0; k <= n; ++k)
        c.cofaces_[k].assign(c.tables_[k].size(), {});
    for (int k = 1; k <= n; ++k) {
        auto& fk = c.faces_[k];
        fk.resize(c.tables_[k].size());
        for (SimplexIndex i = 0; i < c.tables_[k].size(); ++i) {
            const auto& s = c.tables_[k][i];
            for (std::size_t drop = 0; drop < s.size(); ++drop) {
                Simplex f;
                for (std::size_t j = 0; j < s.size(); ++j)
                    if (j != drop)
                        f.push_back(s[j]);
                const SimplexIndex fi = *c.find(f);
                fk[i].push_back(fi);
                c.cofaces_[k - 1][fi].push_back(i);
            }
        }
    }
    // Cofaces were appended in ascending i, so they are already sorted.

    c.neighbors_.assign(c.vertex_count_, {});
    c.neighbor_edges_.assign(c.vertex_count_, {});
    c.star_.assign(c.vertex_count_, {});
    if (n >= 1) {
        for (SimplexIndex e = 0; e < c.tables_[1].size(); ++e) {
            const auto& s = c.tables_[1][e];
            c.neighbors_[s[0]].push_back(s[1]);
            c.neighbor_edges_[s[0]].push_back(e);
            c.neighbors_[s[1]].push_back(s[0]);
            c.neighbor_edges_[s[1]].push_back(e);
        }
        for (VertexId v = 0; v < c.vertex_count_; ++v) {
            std::vector<std::size_t> order(c.neighbors_[v].size());
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(),
                      [&](std::size_t a, std::size_t b) { return c.neighbors_[v][a] < c.neighbors_[v][b]; });
            std::vector<VertexId> nb;
            std::vector<SimplexIndex> ne;
            for (std::size_t j : order) {
                nb.push_back(c.neighbors_[v][j]);
                ne.push_back(c.neighbor_edges_[v][j]);
            }
            c.neighbors_[v] = std::move(nb);
            c.neighbor_edges_[v] = std::move(ne);
        }
    }
    for (SimplexIndex t = 0; t < c.tables_[n].size(); ++t)
        for (VertexId v : c.tables_[n][t])
            c.star_[v].push_back(t);
    return c;
}

/// Mod-2 boundary of a k-chain, 1 <= k <= n.
inline Chain boundary_chain(const SimplicialComplex& c, const Chain& x)
{
    if (x.dim < 1 || x.dim > c.dimension())
        throw Error(ErrorCode::BadDimension, "boundary needs 1 <= k <= " + std::to_string(c.dimension()) +
                                                 ", got k=" + std::to_string(x.dim));
    if (x.bits.size() != c.count(x.dim))
        throw Error(ErrorCode::DimensionMismatch, "chain length does not match the complex");
    Chain out = c.zero_chain(x.dim - 1);
    x.bits.for_each_set([&](std::size_t i) {
        for (SimplexIndex f : c.faces(x.dim, static_cast<SimplexIndex>(i)))
            out.toggle(f);
    });
    return out;
}

inline bool is_cycle(const SimplicialComplex& c, const Chain& x)
{
    if (x.dim == 0)
        return true;
    return boundary_chain(c, x).empty();
}

struct PseudomanifoldViolation {
    enum class Kind { CofaceCount, Disconnected, IsolatedVertex, Empty };
    Kind kind;
    Simplex simplex; ///< offending simplex; for Disconnected, a top simplex outside the first component
    std::size_t count = 0;

    std::string describe() const
    {
        switch (kind) {
        case Kind::CofaceCount:
            return "simplex " + format_simplex(simplex) + " has " + std::to_string(count) + " top cofaces (expected 2)";
        case Kind::Disconnected:
            return "top simplices are not strongly connected: " + std::to_string(count) +
                   " components; e.g. " + format_simplex(simplex) + " is unreachable from the first";
        case Kind::IsolatedVertex:
            return "vertex " + format_simplex(simplex) + " lies in no top simplex";
        case Kind::Empty:
            return "complex has no top simplices";
        }
        return "unknown violation";
    }
};

struct PseudomanifoldReport {
    bool ok = true;
    std::vector<PseudomanifoldViolation> violations;
};

/// Checks that every (n-1)-simplex has two top cofaces and that the top
/// simplices are strongly connected through (n-1)-faces.
inline PseudomanifoldReport verify_closed_pseudomanifold(const SimplicialComplex& c)
{
    PseudomanifoldReport rep;
    const int n = c.dimension();
    const std::size_t top = c.count(n);
    if (top == 0) {
        rep.violations.push_back({PseudomanifoldViolation::Kind::Empty, {}, 0});
        rep.ok = false;
        return rep;
    }
    for (VertexId v = 0; v < c.vertex_count(); ++v)
        if (c.star(v).empty())
            rep.violations.push_back({PseudomanifoldViolation::Kind::IsolatedVertex, {v}, 0});
    if (n >= 1) {
        for (SimplexIndex f = 0; f < c.count(n - 1); ++f) {
            const std::size_t k = c.cofaces(n - 1, f).size();
            if (k != 2)
                rep.violations.push_back({PseudomanifoldViolation::Kind::CofaceCount, c.simplex(n - 1, f), k});
        }
    }

    // Strong connectivity by flood fill across shared facets.
    std::vector<int> comp(top, -1);
    int components = 0;
    SimplexIndex first_outside = 0;
    for (SimplexIndex s0 = 0; s0 < top; ++s0) {
        if (comp[s0] >= 0)
            continue;
        if (components == 1)
            first_outside = s0;
        std::vector<SimplexIndex> stack{s0};
        comp[s0] = components;
        while (!stack.empty()) {
            const SimplexIndex s = stack.back();
            stack.pop_back();
            if (n == 0)
                break;
            for (SimplexIndex f : c.faces(n, s))
                for (SimplexIndex t : c.cofaces(n - 1, f))
                    if (comp[t] < 0) {
                        comp[t] = components;
                        stack.push_back(t);
                    }
        }
        ++components;
    }
    if (components > 1)
        rep.violations.push_back({PseudomanifoldViolation::Kind::Disconnected, c.simplex(n, first_outside),
                                  static_cast<std::size_t>(components)});
    rep.ok = rep.violations.empty();
    return rep;
}

} // namespace mincyc

#endif
