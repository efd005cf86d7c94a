#include <catch_amalgamated.hpp>

#include <limits>
#include <random>

#include "support.hpp"

using namespace mincyc;

namespace {

/// Minimum over x + B_1 by walking the exhaustive span; ties to the
/// lexicographically smallest edge vector (edge 0 first, absent before present).
std::pair<double, support::Bits> naive_min(const SimplicialComplex& c, const std::vector<double>& w, const Chain& x)
{
    double best = std::numeric_limits<double>::infinity();
    support::Bits arg;
    const auto xb = support::bits_of(x);
    for (const auto& b : support::boundary_span(c)) {
        support::Bits z(b.size());
        double weight = 0.0;
        for (std::size_t e = 0; e < b.size(); ++e) {
            z[e] = b[e] != xb[e];
            if (z[e])
                weight += w[e];
        }
        if (weight < best || (weight == best && z < arg)) {
            best = weight;
            arg = z;
        }
    }
    return {best, arg};
}

} // namespace

TEST_CASE("coset minimum of a boundary is the empty chain")
{
    const auto b = gen::torus_grid(3, 3);
    const auto& tri = b.complex.simplex(2, 5);
    const std::vector<VertexId> around{tri[0], tri[1], tri[2], tri[0]};
    const auto m = oracle::brute_min_in_class(b.complex, WeightFunction::unit(27), b.complex.path_chain(around));
    CHECK(m.weight == 0.0);
    CHECK(m.argmin.empty());
    CHECK(m.boundary_rank == 17);
    CHECK(m.enumerated == (1U << 17));
}

TEST_CASE("golden coset minima")
{
    const auto rp = gen::rp2_6();
    const auto m = oracle::brute_min_in_class(rp.complex, WeightFunction::unit(15), rp.hn1_basis[0]);
    CHECK(m.weight == 3.0);
    CHECK(m.boundary_rank == 9);

    const auto tor = gen::torus_grid(3, 3);
    CHECK(oracle::brute_min_in_class(tor.complex, WeightFunction::unit(27), tor.hn1_basis[0]).weight == 3.0);
    CHECK(oracle::brute_min_in_class(tor.complex, WeightFunction::unit(27), tor.hn1_basis[0] + tor.hn1_basis[1]).weight ==
          3.0);
}

TEST_CASE("budget is enforced")
{
    const auto tor = gen::torus_grid(3, 3);
    try {
        oracle::brute_min_in_class(tor.complex, WeightFunction::unit(27), tor.hn1_basis[0], 1U << 16);
        FAIL("expected BudgetExceeded");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::BudgetExceeded);
    }
}

TEST_CASE("oracle matches a naive span walk including the tie-break")
{
    std::mt19937_64 rng(55);
    for (const auto& b : {gen::rp2_6(), gen::torus_grid(3, 3), gen::klein_grid(3, 3)}) {
        for (int trial = 0; trial < 8; ++trial) {
            std::vector<double> w(b.complex.edge_count());
            for (auto& v : w)
                v = trial % 2 ? static_cast<double>(rng() % 3) : static_cast<double>(rng() % 1000) / 37.0;
            const auto x = support::random_cycle(b.complex, rng);
            const auto m = oracle::brute_min_in_class(b.complex, WeightFunction(w), x);
            const auto [weight, arg] = naive_min(b.complex, w, x);
            CHECK(m.weight == weight);
            CHECK(support::bits_of(m.argmin) == arg);
        }
    }
}

TEST_CASE("general and single-word enumerations agree")
{
    std::mt19937_64 rng(8);
    const auto b = gen::torus_grid(3, 3);
    const auto gens = oracle::detail::boundary_generators(b.complex);
    for (int trial = 0; trial < 4; ++trial) {
        std::vector<double> w(b.complex.edge_count());
        for (auto& v : w)
            v = static_cast<double>(rng() % 4);
        const auto x = support::random_cycle(b.complex, rng);
        BitVector general_arg;
        double general = 0.0;
        oracle::detail::gray_enumerate(x.bits, gens, w, general_arg, general);
        const auto packed = oracle::brute_min_in_class(b.complex, WeightFunction(w), x);
        CHECK(general == packed.weight);
        CHECK(general_arg == packed.argmin.bits);
    }
}

TEST_CASE("coset minimum is monotone in single edge weights")
{
    std::mt19937_64 rng(21);
    const auto b = gen::klein_grid(3, 3);
    const auto x = b.h1_basis[0] + b.h1_basis[1];
    std::vector<double> w(b.complex.edge_count());
    for (auto& v : w)
        v = static_cast<double>(rng() % 100) / 10.0;
    double base = oracle::brute_min_in_class(b.complex, WeightFunction(w), x).weight;
    for (int trial = 0; trial < 10; ++trial) {
        w[rng() % w.size()] += static_cast<double>(rng() % 50) / 10.0;
        const double next = oracle::brute_min_in_class(b.complex, WeightFunction(w), x).weight;
        CHECK(next >= base);
        base = next;
    }
}

TEST_CASE("cup-product form invariants")
{
    CHECK(oracle::cup_form_invariants(gen::sphere_tet().complex).rank == 0);
    const auto rp = oracle::cup_form_invariants(gen::rp2_6().complex);
    CHECK(rp.rank == 1);
    CHECK(rp.has_odd_diagonal);
    const auto tor = oracle::cup_form_invariants(gen::torus_grid(3, 3).complex);
    CHECK(tor.rank == 2);
    CHECK_FALSE(tor.has_odd_diagonal);
    const auto kl = oracle::cup_form_invariants(gen::klein_grid(4, 4).complex);
    CHECK(kl.rank == 2);
    CHECK(kl.has_odd_diagonal);
    const auto g2 = oracle::cup_form_invariants(gen::genus2_polygon().complex);
    CHECK(g2.rank == 4);
    CHECK_FALSE(g2.has_odd_diagonal);
    CHECK_THROWS_AS(oracle::cup_form_invariants(gen::torus3_grid(3, 3, 3).complex), Error);
}

TEST_CASE("cup-product form is symmetric on surfaces")
{
    for (const auto& b : support::surfaces()) {
        const auto f = oracle::cup_form_invariants(b.complex).form;
        CHECK(f == f.transpose());
    }
}

TEST_CASE("cohomology basis consists of cocycles")
{
    for (const auto& b : support::surfaces()) {
        const auto basis = oracle::cohomology_basis_1(b.complex);
        CHECK(basis.size() == betti_z2(b.complex, 1));
        for (const auto& a : basis)
            for (const auto& tri : b.complex.simplices(2)) {
                const bool s = a.test(*b.complex.edge(tri[0], tri[1])) ^ a.test(*b.complex.edge(tri[1], tri[2])) ^
                               a.test(*b.complex.edge(tri[0], tri[2]));
                CHECK_FALSE(s);
            }
    }
}
