#include "oracles.hpp"

#include "hmfa/discrepancy.hpp"
#include "hmfa/generators.hpp"
#include "hmfa/rng.hpp"

#include <doctest.h>

#include <stdexcept>

#include <cmath>

using namespace hmfa;

namespace {

VertexSet set_of(std::size_t n, std::initializer_list<Vertex> members)
{
    std::vector<Vertex> v(members);
    return VertexSet::from_indices(n, v);
}

VertexSet random_set(std::size_t n, Rng& rng, double p = 0.5)
{
    VertexSet s(n);
    for (Vertex v = 0; v < n; ++v)
        if (rng.bernoulli(p))
            s.insert(v);
    return s;
}

std::uint64_t mask_of(const std::vector<Vertex>& v)
{
    std::uint64_t m = 0;
    for (Vertex x : v)
        m |= 1ULL << x;
    return m;
}

const Graph k2 = Graph::from_edges(2, std::vector<Edge>{{0, 1}});

} // namespace

TEST_SUITE("discrepancy") {

TEST_CASE("delta examples")
{
    const Graph g = erdos_renyi(10, 0.4, 1).graph;
    CHECK(delta(g, VertexSet::full(10), VertexSet::full(10)) == doctest::Approx(0.0));

    const Graph m = named_graph(NamedKind::perfect_matching, 10);
    VertexSet evens(10);
    for (Vertex v = 0; v < 10; v += 2)
        evens.insert(v);
    CHECK(delta(m, evens, evens) == doctest::Approx(-0.25));

    CHECK(delta(k2, set_of(2, {0}), set_of(2, {1})) == doctest::Approx(0.25));
}

TEST_CASE("delta is symmetric, additive and bounded by 1")
{
    Rng rng(3);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const std::size_t n = 6 + seed % 15;
        const Graph g = oracle::random_graph(n, 0.3, seed);
        for (int t = 0; t < 20; ++t) {
            const VertexSet a = random_set(n, rng), b = random_set(n, rng);
            const double d = delta(g, a, b);
            CHECK(std::abs(d) <= 1.0);
            CHECK(d == doctest::Approx(delta(g, b, a)));
            VertexSet a1(n), a2(n);
            for (Vertex v : a.indices())
                (rng.bernoulli(0.5) ? a1 : a2).insert(v);
            CHECK(d == doctest::Approx(delta(g, a1, b) + delta(g, a2, b)));
        }
    }
}

TEST_CASE("del_star examples")
{
    CHECK(del_star(named_graph(NamedKind::cycle, 9)) == 0.0);
    CHECK(del_star(random_regular(20, 3, 4).graph) == 0.0);
    CHECK(del_star(named_graph(NamedKind::star, 4)) == doctest::Approx(0.25));
    CHECK(del_star(k2) == 0.0);
}

TEST_CASE("del_star equals the maximum of |delta(A, [N])| over all sets")
{
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const std::size_t n = 4 + seed % 17; // up to 20
        const Graph g = oracle::random_graph(n, 0.35, seed);
        CHECK(del_star(g) == doctest::Approx(oracle::naive_del_star(g)).epsilon(1e-12));
        CHECK(del_star(g) == doctest::Approx(std::abs(delta(g, v_plus(g), VertexSet::full(n)))));
    }
}

TEST_CASE("brute force on K2")
{
    const auto r = brute_force_discrepancies(k2);
    REQUIRE(r.del_max);
    CHECK(r.del_max->value == doctest::Approx(0.25));
    CHECK(r.del_max->method == Method::exact_bruteforce);
    REQUIRE(r.del_max->witness);
    // candidates: ({0},{1}) and ({0},{0}); the smaller mask pair is ({0},{0})
    CHECK(r.del_max->witness->a == std::vector<Vertex>{0});
    CHECK(std::abs(delta(k2, VertexSet::from_indices(2, r.del_max->witness->a),
                         VertexSet::from_indices(2, r.del_max->witness->b))) == doctest::Approx(0.25));
}

TEST_CASE("greedy-in-B reduction equals naive 4^N enumeration")
{
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const std::size_t n = 2 + seed % 9; // up to 10
        const Graph g = oracle::random_graph(n, 0.2 + 0.05 * static_cast<double>(seed % 10), seed);
        DiscrepancySelection all{true, true, true, true};
        const auto r = brute_force_discrepancies(g, all);
        const auto dm = oracle::naive_discrepancy(g, oracle::Family::all_pairs);
        const auto d1 = oracle::naive_discrepancy(g, oracle::Family::diagonal);
        const auto d2 = oracle::naive_discrepancy(g, oracle::Family::disjoint);
        const auto dt = oracle::naive_volume_discrepancy(g, (1ULL << n) - 1);
        REQUIRE(r.del_max);
        REQUIRE(r.del_1);
        REQUIRE(r.del_2);
        REQUIRE(r.del_tilde);
        CHECK(r.del_max->value == doctest::Approx(dm.value).epsilon(1e-12));
        CHECK(r.del_1->value == doctest::Approx(d1.value).epsilon(1e-12));
        CHECK(r.del_2->value == doctest::Approx(d2.value).epsilon(1e-12));
        CHECK(r.del_tilde->value == doctest::Approx(dt.value).epsilon(1e-12));
        // tie-break: smallest (mask A, mask B)
        CHECK(mask_of(r.del_max->witness->a) == dm.a);
        CHECK(mask_of(r.del_max->witness->b) == dm.b);
        CHECK(mask_of(r.del_1->witness->a) == d1.a);
        CHECK(mask_of(r.del_2->witness->a) == d2.a);
        CHECK(mask_of(r.del_2->witness->b) == d2.b);
        CHECK(mask_of(r.del_tilde->witness->a) == dt.a);
        CHECK(mask_of(r.del_tilde->witness->b) == dt.b);
    }
    // one size at the oracle's limit
    const Graph g = oracle::random_graph(12, 0.3, 99);
    const auto r = brute_force_discrepancies(g);
    CHECK(r.del_max->value == doctest::Approx(oracle::naive_discrepancy(g, oracle::Family::all_pairs).value));
}

TEST_CASE("witnesses attain the reported values")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const std::size_t n = 8 + seed % 10;
        const Graph g = oracle::random_graph(n, 0.3, 500 + seed);
        const auto r = brute_force_discrepancies(g, DiscrepancySelection{true, true, true, true});
        auto at = [&](const Measure& m, auto fn) {
            const auto a = VertexSet::from_indices(n, m.witness->a);
            const auto b = VertexSet::from_indices(n, m.witness->b);
            return std::abs(fn(g, a, b));
        };
        CHECK(at(*r.del_max, delta) == doctest::Approx(r.del_max->value));
        CHECK(at(*r.del_1, delta) == doctest::Approx(r.del_1->value));
        CHECK(r.del_1->witness->a == r.del_1->witness->b);
        CHECK(at(*r.del_2, delta) == doctest::Approx(r.del_2->value));
        CHECK(VertexSet::from_indices(n, r.del_2->witness->a)
                  .is_disjoint(VertexSet::from_indices(n, r.del_2->witness->b)));
        CHECK(at(*r.del_tilde, delta_tilde) == doctest::Approx(r.del_tilde->value));
    }
}

TEST_CASE("hierarchy between the measures holds on random graphs")
{
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const std::size_t n = 4 + seed % 13; // up to 16
        const Graph g = oracle::random_graph(n, 0.15 + 0.02 * static_cast<double>(seed % 20), 1000 + seed);
        const auto r = brute_force_discrepancies(g, DiscrepancySelection{true, true, true, true});
        const double dm = r.del_max->value, d1 = r.del_1->value, d2 = r.del_2->value, ds = r.del_star.value;
        const double eps = 1e-12;
        CHECK(std::max(d1, d2) <= dm + eps);
        CHECK(dm <= 5.5 * d1 + eps);
        CHECK(ds <= dm + eps);
        CHECK(d1 <= d2 + ds + eps);
        CHECK(std::abs(dm - r.del_tilde->value) <= 2 * ds + eps);
        for (double v : {dm, d1, d2, ds, r.del_tilde->value}) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    }
}

TEST_CASE("degree and volume discrepancies differ by at most 2 del_star pairwise")
{
    Rng rng(5);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Graph g = oracle::random_graph(15, 0.3, seed);
        const double ds = del_star(g);
        for (int t = 0; t < 50; ++t) {
            const VertexSet a = random_set(15, rng), b = random_set(15, rng);
            CHECK(std::abs(delta(g, a, b) - delta_tilde(g, a, b)) <= 2 * ds + 1e-12);
        }
    }
}

TEST_CASE("perfect matchings keep del_max at least 1/4")
{
    for (std::size_t n = 2; n <= 16; n += 2) {
        const auto r = brute_force_discrepancies(named_graph(NamedKind::perfect_matching, n));
        CHECK(r.del_max->value >= 0.25 - 1e-12);
    }
}

TEST_CASE("delta_tilde examples")
{
    const Graph g = erdos_renyi(10, 0.5, 2).graph;
    CHECK(delta_tilde(g, VertexSet::full(10), VertexSet::full(10)) == doctest::Approx(0.0));

    Rng rng(8);
    const Graph reg = random_regular(12, 3, 6).graph;
    for (int t = 0; t < 30; ++t) {
        const VertexSet a = random_set(12, rng), b = random_set(12, rng);
        CHECK(delta_tilde(reg, a, b) == doctest::Approx(delta(reg, a, b)));
    }

    const Graph star = named_graph(NamedKind::star, 4);
    CHECK(delta_tilde(star, set_of(4, {0}), set_of(4, {0})) == doctest::Approx(-0.25));
}

TEST_CASE("brute_force_del_tilde examples")
{
    const Graph reg = random_regular(10, 3, 2).graph;
    CHECK(brute_force_del_tilde(reg).value == doctest::Approx(brute_force_discrepancies(reg).del_max->value));

    const Graph g = oracle::random_graph(11, 0.3, 4);
    CHECK(brute_force_del_tilde_sub(g, VertexSet::full(11)).value == doctest::Approx(brute_force_del_tilde(g).value));
}

TEST_CASE("subgraph volume discrepancy matches its oracle")
{
    Rng rng(21);
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const std::size_t n = 6 + seed % 6;
        const Graph g = oracle::random_graph(n, 0.35, 200 + seed);
        VertexSet h = random_set(n, rng, 0.7);
        if (volume(g, h) == 0)
            continue;
        const auto m = brute_force_del_tilde_sub(g, h);
        const auto o = oracle::naive_volume_discrepancy(g, h.mask());
        CHECK(m.value == doctest::Approx(o.value).epsilon(1e-12));
        const auto a = VertexSet::from_indices(n, m.witness->a), b = VertexSet::from_indices(n, m.witness->b);
        CHECK(std::abs(delta_tilde_sub(g, h, a, b)) == doctest::Approx(m.value));
    }
}

TEST_CASE("removing little volume moves the volume discrepancy little")
{
    Rng rng(17);
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const std::size_t n = 8 + seed % 8;
        const Graph g = oracle::random_graph(n, 0.4, 300 + seed);
        VertexSet h = random_set(n, rng, 0.85);
        const double vol = static_cast<double>(g.volume());
        const double outside = static_cast<double>(volume(g, h.complement())) / vol;
        if (outside > 0.5 || volume(g, h) == 0)
            continue;
        ++checked;
        const double full = brute_force_del_tilde(g).value;
        const double sub = brute_force_del_tilde_sub(g, h).value;
        CHECK(std::abs(full - sub) <= 10 * outside + 1e-12);
    }
    CHECK(checked > 20);
}

TEST_CASE("threads and caps")
{
    const Graph g = oracle::random_graph(16, 0.3, 12);
    const auto one = brute_force_discrepancies(g, DiscrepancySelection{true, true, true, true}, {24, 1});
    const auto four = brute_force_discrepancies(g, DiscrepancySelection{true, true, true, true}, {24, 4});
    CHECK(one.del_max->value == four.del_max->value);
    CHECK(one.del_max->witness->a == four.del_max->witness->a);
    CHECK(one.del_max->witness->b == four.del_max->witness->b);
    CHECK(one.del_2->witness->a == four.del_2->witness->a);
    CHECK(one.del_tilde->witness->b == four.del_tilde->witness->b);

    const auto refused = brute_force_discrepancies(g, {}, {10, 1});
    CHECK(refused.refused.has_value());
    CHECK_FALSE(refused.del_max.has_value());
    CHECK(refused.del_star.value == doctest::Approx(del_star(g)));
    CHECK_THROWS_AS(brute_force_del_tilde(g, {10, 1}), std::invalid_argument);
}

} // TEST_SUITE
