#include <catch_amalgamated.hpp>

#include <limits>
#include <random>
#include <set>

#include "support.hpp"

using namespace mincyc;

namespace {

IndexTable table_of(const gen::MeshBundle& b)
{
    return build_index_function(b.complex, hn1_basis(b.complex, b.hn1_basis));
}

Chain loop(const SimplicialComplex& c, std::vector<VertexId> vs)
{
    vs.push_back(vs.front());
    return c.path_chain(vs);
}

/// Lightest chain in x + B_1 that touches u, by walking the whole boundary span.
double brute_through_vertex(const SimplicialComplex& c, const std::vector<double>& w, const Chain& x, VertexId u)
{
    double best = std::numeric_limits<double>::infinity();
    const auto xb = support::bits_of(x);
    for (const auto& b : support::boundary_span(c)) {
        double weight = 0.0;
        bool touches = false;
        for (std::size_t e = 0; e < b.size(); ++e)
            if (b[e] != xb[e]) {
                weight += w[e];
                const auto& s = c.simplex(1, static_cast<SimplexIndex>(e));
                touches = touches || s[0] == u || s[1] == u;
            }
        if (touches && weight < best)
            best = weight;
    }
    return best;
}

void check_valid(const SimplicialComplex& c, const IndexTable& t, const WeightFunction& L, const Chain& x,
                 const MinCycleResult& r)
{
    CHECK(boundary_chain(c, r.cycle).empty());
    CHECK(index_of_chain(t, r.cycle) == index_of_chain(t, x));
    CHECK(is_null_homologous(c, r.cycle + x));
    CHECK(r.weight <= chain_weight(L, x) * (1 + 1e-12));
    CHECK(r.weight == chain_weight(L, r.cycle));
    CHECK(r.weight <= r.path_weight * (1 + 1e-12));
    if (!r.witness.empty()) {
        CHECK(r.witness.front().sheet.none());
        CHECK(r.witness.front().base == *r.start);
        CHECK(r.witness.back().base == *r.start);
        CHECK(r.witness.back().sheet == r.class_index);
        for (std::size_t s = 1; s < r.witness.size(); ++s) {
            const auto e = c.edge(r.witness[s - 1].base, r.witness[s].base);
            REQUIRE(e);
            CHECK(r.witness[s].sheet == (r.witness[s - 1].sheet ^ t[*e]));
        }
    }
}

} // namespace

TEST_CASE("chain weights")
{
    const auto c = gen::rp2_6().complex;
    const auto unit = WeightFunction::unit(c.edge_count());
    CHECK(chain_weight(unit, c.zero_chain(1)) == 0.0);
    CHECK(chain_weight(unit, loop(c, {0, 1, 3})) == 3.0);
    std::vector<double> w(c.edge_count(), 0.0);
    w[0] = 1.5;
    w[1] = 2.25;
    Chain two = c.zero_chain(1);
    two.toggle(0);
    two.toggle(1);
    CHECK(chain_weight(WeightFunction(w), two) == 3.75);
    CHECK_THROWS_AS(WeightFunction(std::vector<double>{1.0, -0.5}), Error);
    CHECK_THROWS_AS(WeightFunction(std::vector<double>{std::numeric_limits<double>::quiet_NaN()}), Error);
}

TEST_CASE("fixed vertex search on rp2_6")
{
    const auto b = gen::rp2_6();
    const auto t = table_of(b);
    const auto L = WeightFunction::unit(b.complex.edge_count());
    const auto one = support::group_element("1");
    for (VertexId u : {0U, 1U, 3U}) {
        const auto r = min_cycle_fixed_vertex_index(t, b.complex, L, u, one);
        CHECK(r.weight == 3.0);
        CHECK(r.weight == brute_through_vertex(b.complex, L.values(), b.hn1_basis[0], u));
        check_valid(b.complex, t, L, b.hn1_basis[0], r);
    }
    for (VertexId u = 0; u < 6; ++u) {
        const auto r = min_cycle_fixed_vertex_index(t, b.complex, L, u, one);
        CHECK(r.weight == brute_through_vertex(b.complex, L.values(), b.hn1_basis[0], u));
    }
}

TEST_CASE("fixed vertex search on torus_grid(3,3)")
{
    const auto b = gen::torus_grid(3, 3);
    const auto t = table_of(b);
    const auto L = WeightFunction::unit(b.complex.edge_count());
    const auto& meridian = b.hn1_basis[0];
    const auto i = index_of_chain(t, meridian);
    for (VertexId u : b.complex.chain_vertices(meridian)) {
        const auto r = min_cycle_fixed_vertex_index(t, b.complex, L, u, i);
        CHECK(r.weight == 3.0);
        CHECK(r.weight == brute_through_vertex(b.complex, L.values(), meridian, u));
    }
}

TEST_CASE("expensive generator edges are avoided")
{
    const auto b = gen::rp2_6();
    const auto t = table_of(b);
    std::vector<double> w(b.complex.edge_count(), 1.0);
    b.hn1_basis[0].bits.for_each_set([&](std::size_t e) { w[e] = 10.0; });
    const WeightFunction L(w);
    const auto r = min_cycle_in_class(t, b.complex, L, b.hn1_basis, b.hn1_basis[0]);
    CHECK((r.cycle.bits & b.hn1_basis[0].bits).none());
    CHECK(r.weight == oracle::brute_min_in_class(b.complex, L, b.hn1_basis[0]).weight);
    CHECK(r.weight == 3.0);
}

TEST_CASE("argument errors")
{
    const auto b = gen::rp2_6();
    const auto t = table_of(b);
    const auto L = WeightFunction::unit(b.complex.edge_count());
    auto code = [](auto&& f) {
        try {
            f();
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::IoError;
    };
    CHECK(code([&] { min_cycle_fixed_vertex_index(t, b.complex, L, 0, t.zero()); }) == ErrorCode::IndexZero);
    CHECK(code([&] { min_cycle_fixed_vertex_index(t, b.complex, L, 6, support::group_element("1")); }) ==
          ErrorCode::BadParams);
    CHECK(code([&] { min_cycle_fixed_vertex_index(t, b.complex, L, 0, support::group_element("10")); }) ==
          ErrorCode::DimensionMismatch);
    CHECK(code([&] { min_cycle_fixed_vertex_index(t, b.complex, WeightFunction::unit(3), 0, support::group_element("1")); }) ==
          ErrorCode::DimensionMismatch);
    Chain open = b.complex.zero_chain(1);
    open.toggle(0);
    CHECK(code([&] { min_cycle_in_class(t, b.complex, L, b.hn1_basis, open); }) == ErrorCode::NotACycle);
}

TEST_CASE("class minimum: bounding input gives the empty cycle")
{
    for (const auto& b : support::all_meshes()) {
        const auto t = table_of(b);
        const auto L = WeightFunction::unit(b.complex.edge_count());
        const auto& tri = b.complex.simplex(2, 0);
        const auto x = loop(b.complex, {tri[0], tri[1], tri[2]});
        const auto r = min_cycle_in_class(t, b.complex, L, b.hn1_basis, x);
        CHECK(r.cycle.empty());
        CHECK(r.weight == 0.0);
        CHECK(r.witness.empty());
        CHECK_FALSE(r.start.has_value());
    }
}

TEST_CASE("class minimum: examples")
{
    const auto rp = gen::rp2_6();
    const auto trp = table_of(rp);
    const auto five = loop(rp.complex, {0, 1, 2, 4, 3});
    REQUIRE(five.size() == 5);
    REQUIRE(homologous(rp.complex, five, rp.hn1_basis[0]));
    const auto L = WeightFunction::unit(rp.complex.edge_count());
    const auto r = min_cycle_in_class(trp, rp.complex, L, rp.hn1_basis, five);
    CHECK(r.weight == 3.0);
    check_valid(rp.complex, trp, L, five, r);

    const auto tor = gen::torus_grid(3, 3);
    const auto tt = table_of(tor);
    const auto x = tor.h1_basis[0] + tor.h1_basis[1];
    const auto Lt = WeightFunction::unit(tor.complex.edge_count());
    const auto rt = min_cycle_in_class(tt, tor.complex, Lt, tor.hn1_basis, x);
    CHECK(rt.weight == 3.0);
    CHECK(rt.weight == oracle::brute_min_in_class(tor.complex, Lt, x).weight);
    check_valid(tor.complex, tt, Lt, x, rt);
}

TEST_CASE("outputs are valid on random inputs")
{
    std::mt19937_64 rng(123);
    for (const auto& b : support::all_meshes()) {
        const auto t = table_of(b);
        for (int trial = 0; trial < 15; ++trial) {
            std::vector<double> w(b.complex.edge_count());
            for (auto& v : w)
                v = static_cast<double>(rng() % 1000) / 100.0;
            const WeightFunction L(w);
            const auto x = support::random_cycle(b.complex, rng);
            const auto r = min_cycle_in_class(t, b.complex, L, b.hn1_basis, x);
            check_valid(b.complex, t, L, x, r);
        }
    }
}

TEST_CASE("label-setting discipline")
{
    std::mt19937_64 rng(5);
    const auto b = gen::klein_grid(4, 4);
    const auto t = table_of(b);
    std::vector<double> w(b.complex.edge_count());
    for (auto& v : w)
        v = static_cast<double>(rng() % 7);
    const WeightFunction L(w);
    for (VertexId u = 0; u < b.complex.vertex_count(); ++u)
        for (const char* bits : {"10", "01", "11"}) {
            SearchTrace trace;
            const auto r = min_cycle_fixed_vertex_index(t, b.complex, L, u, support::group_element(bits), &trace);
            std::set<CoveringVertex> seen;
            for (std::size_t s = 0; s < trace.settled.size(); ++s) {
                CHECK(seen.insert(trace.settled[s].first).second);
                if (s > 0)
                    CHECK(trace.settled[s - 1].second <= trace.settled[s].second);
            }
            CHECK(trace.settled.size() <= trace.discovered);
            CHECK(trace.discovered <= b.complex.vertex_count() * 4);
            CHECK(r.path_weight >= trace.settled.back().second);
        }
}

TEST_CASE("zero-weight edges")
{
    const auto b = gen::torus_grid(4, 4);
    const auto t = table_of(b);
    const WeightFunction L(std::vector<double>(b.complex.edge_count(), 0.0));
    const auto r = min_cycle_in_class(t, b.complex, L, b.hn1_basis, b.h1_basis[0]);
    CHECK(r.weight == 0.0);
    check_valid(b.complex, t, L, b.h1_basis[0], r);
}

TEST_CASE("results do not depend on thread count")
{
    std::mt19937_64 rng(77);
    const auto b = gen::genus2_polygon();
    const auto t = table_of(b);
    std::vector<double> w(b.complex.edge_count());
    for (auto& v : w)
        v = static_cast<double>(rng() % 5);
    const WeightFunction L(w);
    for (int trial = 0; trial < 10; ++trial) {
        const auto x = support::random_cycle(b.complex, rng);
        const auto a = min_cycle_in_class(t, b.complex, L, b.hn1_basis, x, 1);
        const auto c = min_cycle_in_class(t, b.complex, L, b.hn1_basis, x, 4);
        CHECK(a.cycle == c.cycle);
        CHECK(a.witness == c.witness);
        CHECK(a.start == c.start);
    }
}
