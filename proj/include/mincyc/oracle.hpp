#ifndef MINCYC_ORACLE_HPP
#define MINCYC_ORACLE_HPP

/**
 * Brute-force verifiers that share nothing with the covering search:
 *
 *  - brute_min_in_class enumerates the whole coset x + B_1 with a Gray code
 *    over an independent set of triangle boundaries;
 *  - cup_form_invariants computes the cup-product pairing on H^1 of a closed
 *    surface, whose congruence invariants must match those of the pairing
 *    induced by an index table.
 */

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "mincyc/complex.hpp"
#include "mincyc/error.hpp"
#include "mincyc/homology.hpp"
#include "mincyc/index_function.hpp"
#include "mincyc/weights.hpp"
#include "mincyc/z2_algebra.hpp"

namespace mincyc::oracle {

struct CosetMinimum {
    double weight = 0.0;
    Chain argmin;
    std::size_t boundary_rank = 0;
    std::uint64_t enumerated = 0;
};

namespace detail {

struct BoundaryGenerator {
    std::vector<SimplexIndex> edges;
    BitVector mask;
};

/// Triangle boundaries that are independent, in ascending triangle order.
inline std::vector<BoundaryGenerator> boundary_generators(const SimplicialComplex& c)
{
    std::vector<BoundaryGenerator> gens;
    if (c.dimension() < 2)
        return gens;
    EchelonBasis span(c.edge_count());
    for (SimplexIndex tri = 0; tri < c.count(2); ++tri) {
        BitVector col(c.edge_count());
        for (SimplexIndex e : c.faces(2, tri))
            col.set(e);
        if (span.insert(col))
            gens.push_back({c.faces(2, tri), col});
    }
    return gens;
}

inline double exact_weight(std::uint64_t z, const std::vector<double>& w)
{
    double total = 0.0;
    while (z != 0) {
        total += w[static_cast<std::size_t>(std::countr_zero(z))];
        z &= z - 1;
    }
    return total;
}

inline double exact_weight(const BitVector& z, const std::vector<double>& w)
{
    double total = 0.0;
    z.for_each_set([&](std::size_t e) { total += w[e]; });
    return total;
}

/// Lexicographic order on the edge sequence (edge 0 first, 0 < 1).
inline bool lex_less(std::uint64_t a, std::uint64_t b)
{
    const std::uint64_t d = a ^ b;
    return d != 0 && (a & (d & (~d + 1))) == 0;
}

// The running weight is updated incrementally and resynchronized every 2^20
// steps; any candidate within `margin` of the best is re-summed exactly, so
// the returned minimum is the exact ascending-order sum of its edges.
inline void gray_enumerate(BitVector z, const std::vector<BoundaryGenerator>& gens, const std::vector<double>& w,
                           BitVector& best_z, double& best)
{
    double total = 0.0;
    for (double x : w)
        total += x;
    const double margin = 1e-9 * total + 1e-300;
    double cur = exact_weight(z, w);
    best = cur;
    best_z = z;
    const std::uint64_t steps = std::uint64_t{1} << gens.size();
    for (std::uint64_t t = 1; t < steps; ++t) {
        const auto j = static_cast<std::size_t>(std::countr_zero(t));
        z ^= gens[j].mask;
        if ((t & 0xFFFFF) == 0) {
            cur = exact_weight(z, w);
        } else {
            for (SimplexIndex e : gens[j].edges)
                cur += z.test(e) ? w[e] : -w[e];
        }
        if (cur <= best + margin) {
            const double exact = exact_weight(z, w);
            if (exact < best || (exact == best && z < best_z)) {
                best = exact;
                best_z = z;
            }
        }
    }
}

// Single-word variant for complexes with at most 64 edges.
//
// A cluster of generators with a small joint edge support E_in is split off.
// The remaining generators are walked by a Gray code; for each outer state
// the best inner combination depends only on the bits of z on E_in, so it is
// tabulated per bit pattern (filled lazily by its own Gray walk). Among inner
// combinations of equal weight the table keeps the lexicographically smallest
// pattern, which is also the lexicographically smallest full chain because
// the bits outside E_in do not change within a block.
inline void gray_enumerate_packed(std::uint64_t z, const std::vector<BoundaryGenerator>& gens,
                                  const std::vector<double>& w, std::uint64_t& best_z, double& best)
{
    constexpr std::size_t kMaxInner = 12;
    constexpr std::size_t kMaxInnerEdges = 20;
    const std::size_t rank = gens.size();
    auto mask_of = [&](std::size_t j) {
        std::uint64_t m = 0;
        for (SimplexIndex e : gens[j].edges)
            m |= std::uint64_t{1} << e;
        return m;
    };

    // Greedy cluster: repeatedly add the generator contributing the fewest new edges.
    std::vector<char> chosen(rank, 0);
    std::vector<std::size_t> inner;
    std::uint64_t inner_edges = 0;
    while (inner.size() < std::min(kMaxInner, rank)) {
        std::size_t pick = rank;
        int fewest = 64;
        for (std::size_t j = 0; j < rank; ++j) {
            if (chosen[j])
                continue;
            const int added = std::popcount(mask_of(j) & ~inner_edges);
            if (added < fewest) {
                fewest = added;
                pick = j;
            }
        }
        if (pick == rank || static_cast<std::size_t>(std::popcount(inner_edges | mask_of(pick))) > kMaxInnerEdges)
            break;
        chosen[pick] = 1;
        inner.push_back(pick);
        inner_edges |= mask_of(pick);
    }
    std::vector<std::size_t> outer;
    for (std::size_t j = 0; j < rank; ++j)
        if (!chosen[j])
            outer.push_back(j);

    // Pattern bit b <-> b-th lowest edge of E_in.
    std::vector<unsigned> in_edge;
    for (unsigned e = 0; e < 64; ++e)
        if ((inner_edges >> e) & 1U)
            in_edge.push_back(e);
    auto to_pattern = [&](std::uint64_t m) {
        std::uint32_t p = 0;
        for (std::size_t b = 0; b < in_edge.size(); ++b)
            p |= static_cast<std::uint32_t>((m >> in_edge[b]) & 1U) << b;
        return p;
    };
    auto from_pattern = [&](std::uint32_t p) {
        std::uint64_t m = 0;
        for (std::size_t b = 0; b < in_edge.size(); ++b)
            m |= static_cast<std::uint64_t>((p >> b) & 1U) << in_edge[b];
        return m;
    };

    std::vector<std::uint32_t> inner_pattern;
    for (std::size_t j : inner)
        inner_pattern.push_back(to_pattern(mask_of(j)));
    std::vector<double> pattern_weight_of_bit(in_edge.size());
    for (std::size_t b = 0; b < in_edge.size(); ++b)
        pattern_weight_of_bit[b] = w[in_edge[b]];
    auto pattern_weight = [&](std::uint32_t p) {
        double total = 0.0;
        while (p != 0) {
            total += pattern_weight_of_bit[static_cast<std::size_t>(std::countr_zero(p))];
            p &= p - 1;
        }
        return total;
    };

    struct Entry {
        double weight;
        std::uint32_t pattern;
        bool filled;
    };
    std::vector<Entry> table(std::size_t{1} << in_edge.size(), Entry{0.0, 0, false});
    auto inner_best = [&](std::uint32_t p) -> const Entry& {
        Entry& slot = table[p];
        if (slot.filled)
            return slot;
        std::uint32_t q = p;
        slot = {pattern_weight(q), q, true};
        for (std::uint64_t t = 1; t < (std::uint64_t{1} << inner.size()); ++t) {
            q ^= inner_pattern[static_cast<std::size_t>(std::countr_zero(t))];
            const double wq = pattern_weight(q);
            // Lexicographic order on edges is the order on bit-reversed patterns.
            const std::uint32_t d = q ^ slot.pattern;
            if (wq < slot.weight || (wq == slot.weight && (q & (d & (~d + 1))) == 0)) {
                slot.weight = wq;
                slot.pattern = q;
            }
        }
        return slot;
    };

    struct Flip {
        std::uint64_t mask;
        std::uint32_t pattern;
        std::vector<unsigned> out_edges;
    };
    std::vector<Flip> flips;
    for (std::size_t j : outer) {
        Flip f{mask_of(j), to_pattern(mask_of(j)), {}};
        for (SimplexIndex e : gens[j].edges)
            if (!((inner_edges >> e) & 1U))
                f.out_edges.push_back(e);
        flips.push_back(std::move(f));
    }

    double total = 0.0;
    for (double x : w)
        total += x;
    const double margin = 1e-9 * total + 1e-300;
    const std::uint64_t out_mask = ~inner_edges;
    auto consider = [&](std::uint64_t state, double approx) {
        if (approx > best + margin)
            return;
        const Entry& e = inner_best(to_pattern(state));
        const std::uint64_t full = (state & out_mask) | from_pattern(e.pattern);
        const double exact = exact_weight(full, w);
        if (exact < best || (exact == best && lex_less(full, best_z))) {
            best = exact;
            best_z = full;
        }
    };

    best = exact_weight(z, w);
    best_z = z;
    double outside = exact_weight(z & out_mask, w);
    consider(z, outside + inner_best(to_pattern(z)).weight);
    const std::uint64_t steps = std::uint64_t{1} << outer.size();
    for (std::uint64_t t = 1; t < steps; ++t) {
        const Flip& f = flips[static_cast<std::size_t>(std::countr_zero(t))];
        z ^= f.mask;
        if ((t & 0xFFFFF) == 0) {
            outside = exact_weight(z & out_mask, w);
        } else {
            for (unsigned e : f.out_edges)
                outside += ((z >> e) & 1U) ? w[e] : -w[e];
        }
        consider(z, outside + inner_best(to_pattern(z)).weight);
    }
}

} // namespace detail

/**
 * Exact minimum of L over every chain homologous to x, with the
 * lexicographically smallest minimizer. Throws BudgetExceeded when
 * 2^rank(d_2) exceeds `budget`.
 */
inline CosetMinimum brute_min_in_class(const SimplicialComplex& c, const WeightFunction& L, const Chain& x,
                                       std::uint64_t budget = std::uint64_t{1} << 20)
{
    if (x.dim != 1 || x.bits.size() != c.edge_count())
        throw Error(ErrorCode::DimensionMismatch, "x must be a 1-chain of the complex");
    if (L.size() != c.edge_count())
        throw Error(ErrorCode::DimensionMismatch, "weight function does not cover the edges");
    const auto gens = detail::boundary_generators(c);
    if (gens.size() >= 63 || (std::uint64_t{1} << gens.size()) > budget)
        throw Error(ErrorCode::BudgetExceeded, "coset has 2^" + std::to_string(gens.size()) +
                                                   " elements, budget is " + std::to_string(budget));
    const auto& w = L.values();
    CosetMinimum out;
    out.boundary_rank = gens.size();
    out.argmin = c.zero_chain(1);
    out.enumerated = std::uint64_t{1} << gens.size();
    if (c.edge_count() <= 64) {
        auto pack = [](const BitVector& v) { return v.word_count() ? v.words()[0] : std::uint64_t{0}; };
        std::uint64_t best_z = 0;
        detail::gray_enumerate_packed(pack(x.bits), gens, w, best_z, out.weight);
        for (std::size_t e = 0; e < c.edge_count(); ++e)
            if ((best_z >> e) & 1U)
                out.argmin.toggle(static_cast<SimplexIndex>(e));
    } else {
        BitVector best_z;
        detail::gray_enumerate(x.bits, gens, w, best_z, out.weight);
        out.argmin.bits = best_z;
    }
    return out;
}

struct FormInvariants {
    std::size_t rank = 0;
    bool has_odd_diagonal = false;
    Z2Matrix form;

    friend bool operator==(const FormInvariants& a, const FormInvariants& b)
    {
        return a.rank == b.rank && a.has_odd_diagonal == b.has_odd_diagonal;
    }
};

inline FormInvariants form_invariants(const Z2Matrix& m)
{
    FormInvariants f;
    f.form = m;
    f.rank = rank(m);
    for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i)
        if (m.get(i, i))
            f.has_odd_diagonal = true;
    return f;
}

/// Representatives of a basis of H^1: cocycles (kernel of the transpose of
/// d_2) independent modulo coboundaries (image of the transpose of d_1).
inline std::vector<BitVector> cohomology_basis_1(const SimplicialComplex& c)
{
    const std::vector<BitVector> cocycles = kernel_basis(boundary_matrix(c, 2).transpose());
    EchelonBasis coboundaries(c.edge_count());
    for (VertexId v = 0; v < c.vertex_count(); ++v) {
        BitVector d(c.edge_count());
        for (SimplexIndex e : c.neighbor_edges(v))
            d.set(e);
        coboundaries.insert(d);
    }
    std::vector<BitVector> basis;
    for (const auto& z : cocycles)
        if (coboundaries.insert(z))
            basis.push_back(z);
    return basis;
}

/**
 * Cup-product pairing on H^1 of a closed surface, evaluated on the sum of all
 * triangles. With the global vertex order as local order, (a u b)[v0 v1 v2]
 * = a[v0 v1] * b[v1 v2]; no signs are needed over Z2.
 */
inline FormInvariants cup_form_invariants(const SimplicialComplex& c)
{
    if (c.dimension() != 2)
        throw Error(ErrorCode::BadDimension, "cup-product oracle is implemented for surfaces only");
    const auto basis = cohomology_basis_1(c);
    const std::size_t r = basis.size();
    Z2Matrix q(r, r);
    for (const auto& tri : c.simplices(2)) {
        const SimplexIndex front = *c.edge(tri[0], tri[1]);
        const SimplexIndex back = *c.edge(tri[1], tri[2]);
        for (std::size_t a = 0; a < r; ++a) {
            if (!basis[a].test(front))
                continue;
            for (std::size_t b = 0; b < r; ++b)
                if (basis[b].test(back))
                    q.flip(a, b);
        }
    }
    return form_invariants(q);
}

/// Entry (j, k) is coordinate k of J evaluated on cycles[j].
inline FormInvariants index_form_invariants(const IndexTable& t, const std::vector<Chain>& cycles)
{
    Z2Matrix m(cycles.size(), t.rank());
    for (std::size_t j = 0; j < cycles.size(); ++j)
        index_of_chain(t, cycles[j]).for_each_set([&](std::size_t k) { m.set(j, k); });
    return form_invariants(m);
}

} // namespace mincyc::oracle

#endif
