#include "hmfa/generators.hpp"
#include "hmfa/rng.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace hmfa {

namespace {

std::vector<Edge> draw_gnp(std::size_t n, double p, Rng& rng)
{
    std::vector<Edge> edges;
    if (p >= 1.0) {
        edges.reserve(n * (n - 1) / 2);
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v)
                edges.emplace_back(u, v);
        return edges;
    }
    // Geometric skipping over the pairs (v, w), w < v, in row-major order.
    const double log_q = std::log1p(-p);
    std::int64_t v = 1;
    std::int64_t w = -1;
    const auto nn = static_cast<std::int64_t>(n);
    while (v < nn) {
        const double skip = std::floor(std::log(rng.uniform_pos()) / log_q);
        w += 1 + static_cast<std::int64_t>(std::min(skip, 9.0e18));
        while (w >= v && v < nn) {
            w -= v;
            ++v;
        }
        if (v < nn)
            edges.emplace_back(static_cast<Vertex>(w), static_cast<Vertex>(v));
    }
    return edges;
}

struct EdgeKey {
    Vertex a;
    Vertex b;
    auto operator<=>(const EdgeKey&) const = default;
};

EdgeKey key(Vertex u, Vertex v) { return u < v ? EdgeKey{u, v} : EdgeKey{v, u}; }

std::vector<Edge> pairing(std::size_t n, std::uint32_t d, Rng& rng)
{
    std::vector<Vertex> points;
    points.reserve(n * d);
    for (Vertex v = 0; v < n; ++v)
        for (std::uint32_t k = 0; k < d; ++k)
            points.push_back(v);
    for (std::size_t i = points.size(); i > 1; --i)
        std::swap(points[i - 1], points[rng.index(i)]);
    std::vector<Edge> edges;
    edges.reserve(points.size() / 2);
    for (std::size_t i = 0; i + 1 < points.size(); i += 2)
        edges.emplace_back(points[i], points[i + 1]);
    return edges;
}

bool is_simple(const std::vector<Edge>& edges)
{
    std::set<EdgeKey> seen;
    for (const auto& [u, v] : edges) {
        if (u == v || !seen.insert(key(u, v)).second)
            return false;
    }
    return true;
}

// Removes loops and parallel edges from a pairing by degree-preserving swaps
// with uniformly chosen partner edges, then mixes with valid random swaps.
void repair_pairing(std::vector<Edge>& edges, Rng& rng, std::uint32_t mixing_per_edge)
{
    std::multiset<EdgeKey> multiplicity;
    for (const auto& [u, v] : edges)
        multiplicity.insert(key(u, v));
    auto bad = [&](std::size_t i) {
        const auto [u, v] = edges[i];
        return u == v || multiplicity.count(key(u, v)) > 1;
    };
    auto forbidden = [&](Vertex x, Vertex y) { return x == y || multiplicity.count(key(x, y)) > 0; };
    auto try_swap = [&](std::size_t i, std::size_t j) {
        auto [a, b] = edges[i];
        auto [c, e] = edges[j];
        if (rng.bernoulli(0.5))
            std::swap(c, e);
        multiplicity.erase(multiplicity.find(key(a, b)));
        multiplicity.erase(multiplicity.find(key(c, e)));
        if (forbidden(a, c) || forbidden(b, e) || key(a, c) == key(b, e)) {
            multiplicity.insert(key(a, b));
            multiplicity.insert(key(c, e));
            return false;
        }
        edges[i] = {a, c};
        edges[j] = {b, e};
        multiplicity.insert(key(a, c));
        multiplicity.insert(key(b, e));
        return true;
    };

    const std::size_t m = edges.size();
    const std::size_t budget = 1000 * m + 100000;
    std::size_t spent = 0;
    for (std::size_t i = 0; i < m; ++i) {
        while (bad(i)) {
            if (++spent > budget)
                throw std::runtime_error("random_regular: edge-swap repair did not converge");
            const std::size_t j = rng.index(m);
            if (j != i)
                try_swap(i, j);
        }
    }
    const std::size_t mixing = static_cast<std::size_t>(mixing_per_edge) * m;
    for (std::size_t k = 0; k < mixing && m > 1; ++k) {
        const std::size_t i = rng.index(m);
        const std::size_t j = rng.index(m);
        if (i != j)
            try_swap(i, j);
    }
}

} // namespace

GeneratedGraph erdos_renyi(std::size_t n, double p, std::uint64_t seed, std::uint32_t max_attempts)
{
    if (n < 2)
        throw std::invalid_argument("erdos_renyi: n must be >= 2");
    if (!(p > 0.0 && p <= 1.0))
        throw std::invalid_argument("erdos_renyi: p must lie in (0, 1]");
    Rng rng(seed);
    for (std::uint32_t attempt = 1; attempt <= max_attempts; ++attempt) {
        auto edges = draw_gnp(n, p, rng);
        if (!edges.empty())
            return {Graph::from_edges(n, edges), {attempt, true}};
    }
    throw std::runtime_error("erdos_renyi: every one of " + std::to_string(max_attempts) +
                             " draws was edgeless; p is too small for n");
}

GeneratedGraph random_regular(std::size_t n, std::uint32_t d, std::uint64_t seed,
                              const RegularOptions& options)
{
    if (n < 2)
        throw std::invalid_argument("random_regular: n must be >= 2");
    if (d == 0 || d >= n)
        throw std::invalid_argument("random_regular: need 0 < d < n");
    if ((n * d) % 2 != 0)
        throw std::invalid_argument("random_regular: n * d must be even");

    Rng rng(seed);
    if (d == n - 1) {
        std::vector<Edge> edges;
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v)
                edges.emplace_back(u, v);
        return {Graph::from_edges(n, edges), {1, true}};
    }

    const double dd = static_cast<double>(d);
    const double expected_attempts = std::exp((dd * dd - 1.0) / 4.0);
    std::uint32_t attempts = 0;
    if (expected_attempts <= options.max_expected_attempts) {
        while (attempts < options.max_rejection_attempts) {
            ++attempts;
            auto edges = pairing(n, d, rng);
            if (is_simple(edges))
                return {Graph::from_edges(n, edges), {attempts, true}};
        }
    }
    auto edges = pairing(n, d, rng);
    ++attempts;
    repair_pairing(edges, rng, options.mixing_swaps_per_edge);
    return {Graph::from_edges(n, edges), {attempts, false}};
}

NamedKind parse_named_kind(std::string_view name)
{
    if (name == "star")
        return NamedKind::star;
    if (name == "complete")
        return NamedKind::complete;
    if (name == "path")
        return NamedKind::path;
    if (name == "cycle")
        return NamedKind::cycle;
    if (name == "perfect_matching" || name == "matching")
        return NamedKind::perfect_matching;
    if (name == "complete_bipartite")
        return NamedKind::complete_bipartite;
    throw std::invalid_argument("unknown graph kind '" + std::string(name) + "'");
}

std::string_view to_string(NamedKind kind)
{
    switch (kind) {
    case NamedKind::star: return "star";
    case NamedKind::complete: return "complete";
    case NamedKind::path: return "path";
    case NamedKind::cycle: return "cycle";
    case NamedKind::perfect_matching: return "perfect_matching";
    case NamedKind::complete_bipartite: return "complete_bipartite";
    }
    return "unknown";
}

Graph named_graph(NamedKind kind, std::size_t n)
{
    if (n < 2)
        throw std::invalid_argument("named_graph: n must be >= 2");
    std::vector<Edge> edges;
    const auto nv = static_cast<Vertex>(n);
    switch (kind) {
    case NamedKind::star:
        for (Vertex v = 1; v < nv; ++v)
            edges.emplace_back(0, v);
        break;
    case NamedKind::complete:
        for (Vertex u = 0; u < nv; ++u)
            for (Vertex v = u + 1; v < nv; ++v)
                edges.emplace_back(u, v);
        break;
    case NamedKind::path:
        for (Vertex v = 0; v + 1 < nv; ++v)
            edges.emplace_back(v, v + 1);
        break;
    case NamedKind::cycle:
        if (n < 3)
            throw std::invalid_argument("named_graph: cycle needs n >= 3");
        for (Vertex v = 0; v + 1 < nv; ++v)
            edges.emplace_back(v, v + 1);
        edges.emplace_back(0, nv - 1);
        break;
    case NamedKind::perfect_matching:
        if (n % 2 != 0)
            throw std::invalid_argument("named_graph: perfect matching needs even n");
        for (Vertex v = 0; v < nv; v += 2)
            edges.emplace_back(v, v + 1);
        break;
    case NamedKind::complete_bipartite: {
        const Vertex half = nv / 2;
        for (Vertex u = 0; u < half; ++u)
            for (Vertex v = half; v < nv; ++v)
                edges.emplace_back(u, v);
        break;
    }
    }
    return Graph::from_edges(n, edges);
}

} // namespace hmfa
