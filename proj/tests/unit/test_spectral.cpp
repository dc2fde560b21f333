#include "oracles.hpp"

#include "hmfa/discrepancy.hpp"
#include "hmfa/generators.hpp"
#include "hmfa/spectral.hpp"

#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>

using namespace hmfa;

namespace {

SpectralOptions forced(EigenMethod m)
{
    SpectralOptions o;
    o.force_method = m;
    return o;
}

Graph two_cliques(std::size_t half)
{
    std::vector<Edge> edges;
    for (Vertex base : {Vertex{0}, static_cast<Vertex>(half)})
        for (Vertex i = 0; i < half; ++i)
            for (Vertex j = i + 1; j < half; ++j)
                edges.emplace_back(base + i, base + j);
    return Graph::from_edges(2 * half, edges);
}

} // namespace

TEST_SUITE("spectral") {

TEST_CASE("complete graph")
{
    for (std::size_t n : {3u, 5u, 10u, 40u}) {
        const auto r = spectral_report(named_graph(NamedKind::complete, n));
        CHECK(r.lambda_second == doctest::Approx(1.0 / static_cast<double>(n - 1)).epsilon(1e-10));
        CHECK(r.lambda_1 == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.method == EigenMethod::dense_full);
        CHECK(r.spectral_gap == doctest::Approx(1.0 - r.lambda_second));
    }
}

TEST_CASE("regular graphs: lambda is the adjacency value over d")
{
    // cycle C_n: adjacency eigenvalues 2 cos(2 pi k / n)
    const std::size_t n = 11;
    double l2 = -2, lmin = 2;
    for (std::size_t k = 1; k < n; ++k) {
        const double ev = 2 * std::cos(2 * M_PI * static_cast<double>(k) / static_cast<double>(n));
        l2 = std::max(l2, ev);
        lmin = std::min(lmin, ev);
    }
    const auto r = spectral_report(named_graph(NamedKind::cycle, n));
    CHECK(r.lambda_second == doctest::Approx(std::max(l2, -lmin) / 2.0).epsilon(1e-10));
}

TEST_CASE("perfect matching and bipartite graphs have lambda 1")
{
    const auto m = spectral_report(named_graph(NamedKind::perfect_matching, 10));
    CHECK(m.lambda_second == doctest::Approx(1.0));
    CHECK(m.lambda_min == doctest::Approx(-1.0));
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Graph g = named_graph(NamedKind::complete_bipartite, 6 + seed);
        const auto r = spectral_report(g);
        CHECK(r.lambda_min == doctest::Approx(-r.lambda_1).epsilon(1e-10));
        CHECK(r.lambda_second == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("dense solve matches an independent Jacobi eigensolver")
{
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const Graph g = random_regular(12 + 2 * (seed % 5), 3, seed).graph;
        const auto ev = oracle::jacobi_normalized_spectrum(g);
        const auto r = spectral_report(g);
        CHECK(r.lambda_1 == doctest::Approx(ev.back()).epsilon(1e-9));
        CHECK(r.lambda_2 == doctest::Approx(ev[ev.size() - 2]).epsilon(1e-9));
        CHECK(r.lambda_min == doctest::Approx(ev.front()).epsilon(1e-9));
    }
}

TEST_CASE("spectrum invariants")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Graph g = erdos_renyi(60, 0.1, seed).graph;
        const auto r = spectral_report(g);
        CHECK(r.lambda_1 >= r.lambda_2);
        CHECK(r.lambda_2 >= r.lambda_min);
        CHECK(std::abs(r.lambda_2) <= r.lambda_1 + 1e-12);
        CHECK(std::abs(r.lambda_min) <= r.lambda_1 + 1e-12);
        CHECK(r.lambda_1 == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(r.matrix_order + r.excluded_isolated.size() == 60);
    }
}

TEST_CASE("iterative and dense solvers agree")
{
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const Graph g = erdos_renyi(300, 0.05, seed).graph;
        const auto d = spectral_report(g, std::nullopt, forced(EigenMethod::dense_full));
        const auto it = spectral_report(g, std::nullopt, forced(EigenMethod::iterative));
        CHECK(it.method == EigenMethod::iterative);
        CHECK(it.lambda_second == doctest::Approx(d.lambda_second).epsilon(1e-6));
        CHECK(std::abs(it.lambda_second - d.lambda_second) < 1e-6);
    }
    const Graph reg = random_regular(400, 4, 3).graph;
    const auto d = spectral_report(reg, std::nullopt, forced(EigenMethod::dense_full));
    const auto it = spectral_report(reg, std::nullopt, forced(EigenMethod::iterative));
    CHECK(std::abs(it.lambda_second - d.lambda_second) < 1e-6);
}

TEST_CASE("isolated vertices are excluded and reported")
{
    const Graph g = Graph::from_edges(5, std::vector<Edge>{{0, 1}, {1, 2}, {2, 0}});
    const auto r = spectral_report(g);
    CHECK(r.matrix_order == 3);
    CHECK(r.excluded_isolated == std::vector<Vertex>{3, 4});
    CHECK(r.lambda_second == doctest::Approx(0.5));
}

TEST_CASE("restriction to an induced subgraph")
{
    const Graph g = two_cliques(5);
    std::vector<Vertex> first{0, 1, 2, 3, 4};
    const auto r = spectral_report(g, VertexSet::from_indices(10, first));
    CHECK(r.matrix_order == 5);
    CHECK(r.lambda_second == doctest::Approx(0.25));
    REQUIRE(r.restricted_to);
    CHECK(r.restricted_to->size() == 5);
    // disconnected whole graph: lambda = 1
    CHECK(spectral_report(g).lambda_second == doctest::Approx(1.0));
    std::vector<Vertex> apart{0, 5};
    CHECK_THROWS_AS(spectral_report(g, VertexSet::from_indices(10, apart)), std::invalid_argument);
}

TEST_CASE("mixing bound holds exhaustively on small graphs")
{
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const std::size_t n = 5 + seed % 10;
        const Graph g = oracle::random_graph(n, 0.4, seed);
        const auto c = mixing_bound_check(g);
        REQUIRE(c.exact);
        CHECK(*c.exact <= c.bound + 1e-9);
        CHECK(c.pair_violations == 0);
        CHECK(c.holds);
        CHECK(c.worst_pair_ratio <= 1.0 + 1e-9);
    }
}

TEST_CASE("random regular graphs approach the 2 sqrt(d-1)/d floor from above")
{
    CHECK(alon_boppana_floor(3) == doctest::Approx(2 * std::sqrt(2.0) / 3));
    CHECK_THROWS_AS(alon_boppana_floor(1), std::invalid_argument);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const auto r = spectral_report(random_regular(1000, 4, seed).graph);
        CHECK(r.lambda_second > alon_boppana_floor(4) - 0.02);
        CHECK(r.lambda_second < alon_boppana_floor(4) + 0.05);
    }
}

TEST_CASE("core extraction")
{
    // a dense ER graph with a few hubs attached to many low-degree vertices
    const Graph g = erdos_renyi(2000, 0.003, 5).graph;
    const auto c = extract_core(g, 6.0);
    CHECK(c.core.size() + c.removed_init.size() + c.removed_iter.size() == 2000);
    for (Vertex v : c.core.indices()) {
        std::uint32_t outside = 0;
        for (Vertex w : g.neighbors(v))
            outside += c.core.contains(w) ? 0 : 1;
        CHECK(outside < 100);
        CHECK(g.degree(v) >= 3);
    }
    for (Vertex v : c.removed_init)
        CHECK(g.degree(v) < 3);
    REQUIRE(c.core_spectral);
    CHECK(c.core_spectral->lambda_second < 1.0);

    // a low threshold forces the removal loop to act
    CoreOptions strict;
    strict.external_threshold = 2;
    const auto s = extract_core(g, 6.0, strict);
    CHECK_FALSE(s.removed_iter.empty());
    CHECK(s.removed_iter.size() <= 2000);
    for (Vertex v : s.core.indices()) {
        std::uint32_t outside = 0;
        for (Vertex w : g.neighbors(v))
            outside += s.core.contains(w) ? 0 : 1;
        CHECK(outside < 2);
    }
    CHECK_THROWS_AS(extract_core(g, 0.0), std::invalid_argument);
}

TEST_CASE("core of a star loses the hub to its leaves")
{
    CoreOptions opts;
    opts.external_threshold = 100;
    const auto c = extract_core(named_graph(NamedKind::star, 300), 2.0);
    // leaves (degree 1 = target/2) stay, the hub stays: nothing lies outside
    CHECK(c.core.size() == 300);
    const auto d = extract_core(named_graph(NamedKind::star, 300), 4.0, opts);
    // leaves fail the threshold; the hub then has 299 outside neighbors
    CHECK(d.removed_init.size() == 299);
    CHECK(d.removed_iter == std::vector<Vertex>{0});
    CHECK(d.empty);
    CHECK_FALSE(d.core_spectral);
}

} // TEST_SUITE
