#ifndef MINCYC_GENERATORS_HPP
#define MINCYC_GENERATORS_HPP

// Bundled closed triangulations with curated simple homology bases.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "mincyc/complex.hpp"
#include "mincyc/error.hpp"
#include "mincyc/homology.hpp"

namespace mincyc::gen {

struct MeshBundle {
    std::string name;
    SimplicialComplex complex;
    std::vector<Chain> hn1_basis; ///< simple (n-1)-cycles spanning H_{n-1}
    std::vector<Chain> h1_basis;  ///< 1-cycles spanning H_1
};

namespace detail {

inline Chain loop_chain(const SimplicialComplex& c, std::vector<VertexId> loop)
{
    loop.push_back(loop.front());
    return c.path_chain(loop);
}

inline void require_side(const char* family, const char* param, int value, int minimum)
{
    if (value < minimum)
        throw Error(ErrorCode::BadParams, std::string(family) + ": " + param + " = " + std::to_string(value) +
                                              " must be at least " + std::to_string(minimum));
}

/// Triangles of a p x q grid with periodic identifications given by `vertex`.
template <typename VertexOf>
std::vector<Simplex> grid_triangles(int p, int q, VertexOf vertex)
{
    std::vector<Simplex> tris;
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < q; ++j) {
            const VertexId a = vertex(i, j), b = vertex(i + 1, j), cc = vertex(i + 1, j + 1), d = vertex(i, j + 1);
            tris.push_back({a, b, cc});
            tris.push_back({a, d, cc});
        }
    }
    return tris;
}

} // namespace detail

/// Boundary of the tetrahedron: the 2-sphere with 4 vertices.
inline MeshBundle sphere_tet()
{
    MeshBundle b;
    b.name = "sphere_tet";
    b.complex = build_complex(2, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
    return b;
}

/// Six-vertex real projective plane (hemi-icosahedron); its generator is the
/// non-facial triangle 0-1-3.
inline MeshBundle rp2_6()
{
    MeshBundle b;
    b.name = "rp2_6";
    b.complex = build_complex(2, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                                  {1, 2, 4}, {1, 3, 4}, {1, 3, 5}, {2, 3, 5}, {2, 4, 5}});
    b.hn1_basis = {detail::loop_chain(b.complex, {0, 1, 3})};
    b.h1_basis = b.hn1_basis;
    return b;
}

inline VertexId torus_vertex(int p, int q, int i, int j)
{
    return static_cast<VertexId>(((i % p + p) % p) * q + ((j % q + q) % q));
}

/// Flat torus from a p x q grid, each square split along its (i,j)-(i+1,j+1)
/// diagonal. Vertex (i,j) has id i*q + j.
inline MeshBundle torus_grid(int p, int q)
{
    detail::require_side("torus_grid", "p", p, 3);
    detail::require_side("torus_grid", "q", q, 3);
    MeshBundle b;
    b.name = "torus_grid(" + std::to_string(p) + "," + std::to_string(q) + ")";
    b.complex = build_complex(2, detail::grid_triangles(p, q, [&](int i, int j) { return torus_vertex(p, q, i, j); }));
    std::vector<VertexId> meridian, longitude;
    for (int j = 0; j < q; ++j)
        meridian.push_back(torus_vertex(p, q, 0, j));
    for (int i = 0; i < p; ++i)
        longitude.push_back(torus_vertex(p, q, i, 0));
    b.hn1_basis = {detail::loop_chain(b.complex, meridian), detail::loop_chain(b.complex, longitude)};
    b.h1_basis = b.hn1_basis;
    return b;
}

/// Klein bottle from a p x q grid: plain wrap in i, wrap with the flip
/// i -> -i in j. Vertex (i,j) has id i*q + j for 0 <= i < p, 0 <= j < q.
inline MeshBundle klein_grid(int p, int q)
{
    detail::require_side("klein_grid", "p", p, 3);
    detail::require_side("klein_grid", "q", q, 3);
    auto vertex = [p, q](int i, int j) {
        const int turns = (j >= 0 ? j / q : -((-j + q - 1) / q));
        int jj = j - turns * q;
        int ii = (turns % 2 != 0) ? -i : i;
        return torus_vertex(p, q, ii, jj);
    };
    MeshBundle b;
    b.name = "klein_grid(" + std::to_string(p) + "," + std::to_string(q) + ")";
    b.complex = build_complex(2, detail::grid_triangles(p, q, vertex));
    std::vector<VertexId> along_j, along_i;
    for (int j = 0; j < q; ++j)
        along_j.push_back(vertex(0, j));
    for (int i = 0; i < p; ++i)
        along_i.push_back(vertex(i, 0));
    b.hn1_basis = {detail::loop_chain(b.complex, along_j), detail::loop_chain(b.complex, along_i)};
    b.h1_basis = b.hn1_basis;
    return b;
}

/**
 * Closed genus-2 surface: connected sum of two torus_grid(3,3) copies glued
 * along the removed triangle [(1,1),(2,1),(2,2)]. Vertices 0..8 are the first
 * torus; the second torus's vertices other than the glued three are 9..14.
 */
inline MeshBundle genus2_polygon()
{
    const int p = 3, q = 3;
    const VertexId g0 = torus_vertex(p, q, 1, 1), g1 = torus_vertex(p, q, 2, 1), g2 = torus_vertex(p, q, 2, 2);
    std::vector<VertexId> second(9);
    VertexId next = 9;
    for (VertexId v = 0; v < 9; ++v)
        second[v] = (v == g0 || v == g1 || v == g2) ? v : next++;
    auto torus1 = [&](int i, int j) { return torus_vertex(p, q, i, j); };
    auto torus2 = [&](int i, int j) { return second[torus_vertex(p, q, i, j)]; };
    const Simplex removed{g0, g1, g2};
    std::vector<Simplex> tris;
    for (auto& t : detail::grid_triangles(p, q, torus1))
        if (std::is_permutation(t.begin(), t.end(), removed.begin()) == false)
            tris.push_back(t);
    for (auto& t : detail::grid_triangles(p, q, torus2))
        if (std::is_permutation(t.begin(), t.end(), removed.begin()) == false)
            tris.push_back(t);
    MeshBundle b;
    b.name = "genus2_polygon";
    b.complex = build_complex(2, std::move(tris));
    std::vector<VertexId> m1, l1, m2, l2;
    for (int j = 0; j < q; ++j) {
        m1.push_back(torus1(0, j));
        m2.push_back(torus2(0, j));
    }
    for (int i = 0; i < p; ++i) {
        l1.push_back(torus1(i, 0));
        l2.push_back(torus2(i, 0));
    }
    b.hn1_basis = {detail::loop_chain(b.complex, m1), detail::loop_chain(b.complex, l1),
                   detail::loop_chain(b.complex, m2), detail::loop_chain(b.complex, l2)};
    b.h1_basis = b.hn1_basis;
    return b;
}

/**
 * Flat 3-torus from a p x q x s grid. Each cube is split into the six
 * tetrahedra along its main diagonal (one per ordering of the axes), which
 * is translation invariant and so glues consistently across the periodic
 * boundary. H_2 is spanned by the three coordinate 2-tori through the
 * origin and H_1 by the three axis loops.
 */
inline MeshBundle torus3_grid(int p, int q, int s)
{
    detail::require_side("torus3_grid", "p", p, 3);
    detail::require_side("torus3_grid", "q", q, 3);
    detail::require_side("torus3_grid", "s", s, 3);
    const int dims[3] = {p, q, s};
    auto vertex = [&](int x, int y, int z) {
        x = (x % p + p) % p;
        y = (y % q + q) % q;
        z = (z % s + s) % s;
        return static_cast<VertexId>((x * q + y) * s + z);
    };
    static constexpr int kOrders[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    std::vector<Simplex> tets;
    for (int x = 0; x < p; ++x)
        for (int y = 0; y < q; ++y)
            for (int z = 0; z < s; ++z)
                for (const auto& order : kOrders) {
                    int c[3] = {x, y, z};
                    Simplex t{vertex(c[0], c[1], c[2])};
                    for (int axis : order) {
                        ++c[axis];
                        t.push_back(vertex(c[0], c[1], c[2]));
                    }
                    tets.push_back(std::move(t));
                }
    MeshBundle b;
    b.name = "torus3_grid(" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(s) + ")";
    b.complex = build_complex(3, std::move(tets));

    // Coordinate plane normal to `axis` at coordinate 0; its squares are split
    // along the diagonal from the low corner to the high corner.
    for (int axis = 0; axis < 3; ++axis) {
        const int a1 = (axis + 1) % 3, a2 = (axis + 2) % 3;
        std::vector<Simplex> tris;
        for (int i = 0; i < dims[a1]; ++i)
            for (int j = 0; j < dims[a2]; ++j) {
                auto at = [&](int di, int dj) {
                    int c[3] = {0, 0, 0};
                    c[a1] = i + di;
                    c[a2] = j + dj;
                    return vertex(c[0], c[1], c[2]);
                };
                tris.push_back({at(0, 0), at(1, 0), at(1, 1)});
                tris.push_back({at(0, 0), at(0, 1), at(1, 1)});
            }
        b.hn1_basis.push_back(b.complex.chain_from_simplices(2, tris));
    }
    for (int axis = 0; axis < 3; ++axis) {
        std::vector<VertexId> loop;
        for (int t = 0; t < dims[axis]; ++t) {
            int c[3] = {0, 0, 0};
            c[axis] = t;
            loop.push_back(vertex(c[0], c[1], c[2]));
        }
        b.h1_basis.push_back(detail::loop_chain(b.complex, loop));
    }
    return b;
}

inline const std::vector<std::string>& family_names()
{
    static const std::vector<std::string> names{"sphere_tet",  "rp2_6",          "torus_grid",
                                                "klein_grid",  "genus2_polygon", "torus3_grid"};
    return names;
}

/// Dispatches by family name; grid families take their side lengths in params.
inline MeshBundle generate(const std::string& name, const std::vector<int>& params = {})
{
    auto need = [&](std::size_t k) {
        if (params.size() != k)
            throw Error(ErrorCode::BadParams, name + " takes " + std::to_string(k) + " parameter(s), got " +
                                                  std::to_string(params.size()));
    };
    if (name == "sphere_tet") {
        need(0);
        return sphere_tet();
    }
    if (name == "rp2_6") {
        need(0);
        return rp2_6();
    }
    if (name == "genus2_polygon") {
        need(0);
        return genus2_polygon();
    }
    if (name == "torus_grid") {
        need(2);
        return torus_grid(params[0], params[1]);
    }
    if (name == "klein_grid") {
        need(2);
        return klein_grid(params[0], params[1]);
    }
    if (name == "torus3_grid") {
        need(3);
        return torus3_grid(params[0], params[1], params[2]);
    }
    throw Error(ErrorCode::BadParams, "unknown mesh family '" + name + "'");
}

} // namespace mincyc::gen

#endif
