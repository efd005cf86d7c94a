#ifndef MINCYC_HOMOLOGY_HPP
#define MINCYC_HOMOLOGY_HPP

// Z2 homology: boundary matrices, Betti numbers, cycle bases and the
// simplicity test required of the (n-1)-cycles fed to the index function.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mincyc/complex.hpp"
#include "mincyc/error.hpp"
#include "mincyc/z2_algebra.hpp"

namespace mincyc {

/// Boundary matrix of dimension k: rows are (k-1)-simplices, columns k-simplices.
inline Z2Matrix boundary_matrix(const SimplicialComplex& c, int k)
{
    if (k < 1 || k > c.dimension())
        throw Error(ErrorCode::BadDimension, "boundary matrix needs 1 <= k <= n");
    Z2Matrix m(c.count(k - 1), c.count(k));
    for (SimplexIndex j = 0; j < c.count(k); ++j)
        for (SimplexIndex f : c.faces(k, j))
            m.set(f, j);
    return m;
}

/// dim ker d_k - rank d_{k+1}, with d_0 = 0 and d_{n+1} = 0.
inline std::size_t betti_z2(const SimplicialComplex& c, int k)
{
    const int n = c.dimension();
    if (k < 0 || k > n)
        throw Error(ErrorCode::BadDimension, "Betti number requested for k=" + std::to_string(k) +
                                                 " outside 0.." + std::to_string(n));
    const std::size_t ker = k == 0 ? c.count(0) : c.count(k) - rank(boundary_matrix(c, k));
    const std::size_t img = k == n ? 0 : rank(boundary_matrix(c, k + 1));
    return ker - img;
}

inline std::vector<std::size_t> betti_numbers(const SimplicialComplex& c)
{
    std::vector<std::size_t> out;
    for (int k = 0; k <= c.dimension(); ++k)
        out.push_back(betti_z2(c, k));
    return out;
}

/// Echelon basis of the k-boundaries B_k = im d_{k+1}.
inline EchelonBasis boundary_space(const SimplicialComplex& c, int k)
{
    EchelonBasis b(c.count(k));
    if (k < c.dimension()) {
        for (SimplexIndex j = 0; j < c.count(k + 1); ++j) {
            BitVector col(c.count(k));
            for (SimplexIndex f : c.faces(k + 1, j))
                col.set(f);
            b.insert(col);
        }
    }
    return b;
}

inline void require_cycle(const SimplicialComplex& c, const Chain& z, const char* what)
{
    if (z.bits.size() != c.count(z.dim))
        throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": chain length does not match the complex");
    if (!is_cycle(c, z))
        throw Error(ErrorCode::NotACycle, std::string(what) + " has nonempty boundary");
}

/// True iff d_2 w = z is solvable.
inline bool is_null_homologous(const SimplicialComplex& c, const Chain& z)
{
    if (z.dim != 1)
        throw Error(ErrorCode::BadDimension, "is_null_homologous expects a 1-chain");
    require_cycle(c, z, "chain");
    if (z.empty())
        return true;
    if (c.dimension() < 2)
        return false;
    return solve(boundary_matrix(c, 2), z.bits).has_value();
}

/// True iff two k-cycles differ by a boundary (any k).
inline bool homologous(const SimplicialComplex& c, const Chain& x, const Chain& y)
{
    const Chain s = x + y;
    require_cycle(c, s, "sum");
    if (s.empty())
        return true;
    if (s.dim >= c.dimension())
        return false;
    return boundary_space(c, s.dim).contains(s.bits);
}

/**
 * A k-cycle is simple when its simplices form a connected closed
 * pseudomanifold: every (k-1)-face of a member lies in exactly two members,
 * and members are connected through those faces. For k = 0 this means a
 * single vertex.
 */
inline bool is_simple_cycle(const SimplicialComplex& c, const Chain& z)
{
    require_cycle(c, z, "cycle");
    const auto members = z.members();
    if (members.empty())
        return false;
    if (z.dim == 0)
        return members.size() == 1;

    const int k = z.dim;
    std::vector<std::vector<std::size_t>> by_face(c.count(k - 1));
    for (std::size_t m = 0; m < members.size(); ++m)
        for (SimplexIndex f : c.faces(k, members[m]))
            by_face[f].push_back(m);
    std::vector<std::size_t> parent(members.size());
    for (std::size_t i = 0; i < parent.size(); ++i)
        parent[i] = i;
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& list : by_face) {
        if (list.empty())
            continue;
        if (list.size() != 2)
            return false;
        parent[find(list[0])] = find(list[1]);
    }
    const std::size_t root = find(0);
    for (std::size_t i = 1; i < members.size(); ++i)
        if (find(i) != root)
            return false;
    return true;
}

struct HomologyBasis {
    int dim = 0;
    std::vector<Chain> cycles;

    std::size_t rank() const noexcept { return cycles.size(); }
};

/**
 * A basis of H_k by matrix reduction: cycles from the kernel of d_k that are
 * independent modulo im d_{k+1}, in kernel-basis order.
 */
inline HomologyBasis homology_basis(const SimplicialComplex& c, int k)
{
    if (k < 0 || k > c.dimension())
        throw Error(ErrorCode::BadDimension, "homology basis requested outside 0..n");
    std::vector<BitVector> kernel;
    if (k == 0) {
        for (std::size_t v = 0; v < c.count(0); ++v)
            kernel.push_back(BitVector::unit(c.count(0), v));
    } else {
        kernel = kernel_basis(boundary_matrix(c, k));
    }
    EchelonBasis span = boundary_space(c, k);
    HomologyBasis out{k, {}};
    for (auto& z : kernel)
        if (span.insert(z))
            out.cycles.emplace_back(k, std::move(z));
    return out;
}

/// Validates that the cycles are independent in homology and together span H_k.
inline void check_homology_basis(const SimplicialComplex& c, const std::vector<Chain>& cycles, int k)
{
    EchelonBasis span = boundary_space(c, k);
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        if (cycles[i].dim != k)
            throw Error(ErrorCode::BadDimension, "basis cycle #" + std::to_string(i) + " has dimension " +
                                                     std::to_string(cycles[i].dim) + ", expected " + std::to_string(k));
        require_cycle(c, cycles[i], ("basis cycle #" + std::to_string(i)).c_str());
        if (!span.insert(cycles[i].bits))
            throw Error(ErrorCode::NotIndependent,
                        "basis cycle #" + std::to_string(i) + " is homologous to a combination of earlier ones");
    }
    const std::size_t r = betti_z2(c, k);
    if (cycles.size() != r)
        throw Error(ErrorCode::IncompleteBasis, std::to_string(cycles.size()) + " cycles supplied, rank is " +
                                                    std::to_string(r));
}

/**
 * Basis of H_{n-1} suitable as input to the index-function construction.
 *
 * Supplied cycles are validated (cycle, independence, full rank, simplicity)
 * and passed through unchanged. Otherwise a basis is computed by matrix
 * reduction and each cycle must pass the simplicity test; no simplification
 * is attempted, so failure asks the caller to supply a basis.
 */
inline HomologyBasis hn1_basis(const SimplicialComplex& c, const std::optional<std::vector<Chain>>& supplied = std::nullopt)
{
    const int k = c.dimension() - 1;
    if (k < 0)
        throw Error(ErrorCode::BadDimension, "H_{n-1} needs n >= 1");
    if (supplied) {
        check_homology_basis(c, *supplied, k);
        for (std::size_t i = 0; i < supplied->size(); ++i)
            if (!is_simple_cycle(c, (*supplied)[i]))
                throw Error(ErrorCode::NotSimple, "supplied basis cycle #" + std::to_string(i) + " is not simple");
        return HomologyBasis{k, *supplied};
    }
    HomologyBasis b = homology_basis(c, k);
    for (std::size_t i = 0; i < b.cycles.size(); ++i)
        if (!is_simple_cycle(c, b.cycles[i]))
            throw Error(ErrorCode::NotSimple, "computed basis cycle #" + std::to_string(i) +
                                                  " is not simple; supply a basis of simple cycles");
    return b;
}

} // namespace mincyc

#endif
