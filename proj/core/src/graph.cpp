#include "hmfa/graph.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>
#include <string>

namespace hmfa {

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges)
{
    if (n < 2)
        throw std::invalid_argument("graph needs at least 2 vertices");
    if (n > static_cast<std::size_t>(UINT32_MAX))
        throw std::invalid_argument("graph too large");
    if (edges.empty())
        throw std::invalid_argument("graph has no edges (mean degree must be positive)");

    Graph g;
    g.degrees_.assign(n, 0);
    for (const auto& [u, v] : edges) {
        if (u >= n || v >= n)
            throw std::invalid_argument("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                                        ") has an endpoint outside [0, " + std::to_string(n) + ")");
        if (u == v)
            throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
        ++g.degrees_[u];
        ++g.degrees_[v];
    }

    g.offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i)
        g.offsets_[i + 1] = g.offsets_[i] + g.degrees_[i];
    g.neighbors_.resize(g.offsets_[n]);
    std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& [u, v] : edges) {
        g.neighbors_[fill[u]++] = v;
        g.neighbors_[fill[v]++] = u;
    }
    for (std::size_t i = 0; i < n; ++i) {
        auto first = g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]);
        auto last = g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]);
        std::sort(first, last);
        if (auto dup = std::adjacent_find(first, last); dup != last)
            throw std::invalid_argument("duplicate edge (" + std::to_string(i) + ", " +
                                        std::to_string(*dup) + ")");
        g.max_degree_ = std::max(g.max_degree_, g.degrees_[i]);
    }
    return g;
}

bool Graph::has_edge(Vertex u, Vertex v) const noexcept
{
    if (u >= size() || v >= size())
        return false;
    if (degrees_[u] > degrees_[v])
        std::swap(u, v);
    const auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const
{
    std::vector<Edge> out;
    out.reserve(num_edges());
    for (Vertex u = 0; u < size(); ++u)
        for (Vertex v : neighbors(u))
            if (u < v)
                out.emplace_back(u, v);
    return out;
}

std::uint64_t edge_count(const Graph& g, const VertexSet& a, const VertexSet& b)
{
    const VertexSet* outer = &a;
    const VertexSet* inner = &b;
    if (b.size() < a.size())
        std::swap(outer, inner);
    std::uint64_t count = 0;
    for (Vertex i : outer->indices())
        for (Vertex j : g.neighbors(i))
            count += inner->contains(j) ? 1 : 0;
    return count;
}

std::uint64_t volume(const Graph& g, const VertexSet& a)
{
    std::uint64_t vol = 0;
    for (Vertex i : a.indices())
        vol += g.degree(i);
    return vol;
}

std::vector<std::uint32_t> connected_components(const Graph& g)
{
    constexpr auto unset = UINT32_MAX;
    std::vector<std::uint32_t> comp(g.size(), unset);
    std::vector<Vertex> stack;
    std::uint32_t next = 0;
    for (Vertex s = 0; s < g.size(); ++s) {
        if (comp[s] != unset)
            continue;
        comp[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            const Vertex u = stack.back();
            stack.pop_back();
            for (Vertex v : g.neighbors(u))
                if (comp[v] == unset) {
                    comp[v] = next;
                    stack.push_back(v);
                }
        }
        ++next;
    }
    return comp;
}

VertexSet largest_component(const Graph& g)
{
    const auto comp = connected_components(g);
    const std::uint32_t count = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<std::size_t> sizes(count, 0);
    for (auto c : comp)
        ++sizes[c];
    const auto best = static_cast<std::uint32_t>(
        std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
    VertexSet out(g.size());
    for (Vertex v = 0; v < g.size(); ++v)
        if (comp[v] == best)
            out.insert(v);
    return out;
}

std::vector<std::uint8_t> bipartition(const Graph& g)
{
    constexpr std::uint8_t unset = 2;
    std::vector<std::uint8_t> colour(g.size(), unset);
    std::deque<Vertex> queue;
    for (Vertex s = 0; s < g.size(); ++s) {
        if (colour[s] != unset)
            continue;
        colour[s] = 0;
        queue.push_back(s);
        while (!queue.empty()) {
            const Vertex u = queue.front();
            queue.pop_front();
            for (Vertex v : g.neighbors(u)) {
                if (colour[v] == unset) {
                    colour[v] = static_cast<std::uint8_t>(1 - colour[u]);
                    queue.push_back(v);
                } else if (colour[v] == colour[u]) {
                    return {};
                }
            }
        }
    }
    return colour;
}

GraphStats graph_stats(const Graph& g)
{
    GraphStats s;
    s.n = g.size();
    s.num_edges = g.num_edges();
    s.mean_degree = g.mean_degree();
    s.max_degree = g.max_degree();
    s.min_degree = *std::min_element(g.degrees().begin(), g.degrees().end());

    const auto comp = connected_components(g);
    s.num_components = *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<std::size_t> sizes(s.num_components, 0);
    for (auto c : comp)
        ++sizes[c];
    s.largest_component = *std::max_element(sizes.begin(), sizes.end());
    s.theta = 1.0 - static_cast<double>(s.largest_component) / static_cast<double>(s.n);

    for (auto d : g.degrees())
        s.alpha_lower_caro_wei += 1.0 / (static_cast<double>(d) + 1.0);
    s.alpha_lower_turan = static_cast<double>(s.n) / (s.mean_degree + 1.0);
    s.is_bipartite = !bipartition(g).empty();
    return s;
}

VertexSet greedy_independent_set(const Graph& g)
{
    const std::size_t n = g.size();
    std::vector<std::uint32_t> deg(g.degrees().begin(), g.degrees().end());
    std::vector<bool> alive(n, true);
    std::set<std::pair<std::uint32_t, Vertex>> queue;
    for (Vertex v = 0; v < n; ++v)
        queue.emplace(deg[v], v);

    VertexSet chosen(n);
    auto drop = [&](Vertex v) {
        alive[v] = false;
        queue.erase({deg[v], v});
    };
    while (!queue.empty()) {
        const Vertex v = queue.begin()->second;
        chosen.insert(v);
        drop(v);
        for (Vertex w : g.neighbors(v)) {
            if (!alive[w])
                continue;
            drop(w);
            for (Vertex x : g.neighbors(w)) {
                if (!alive[x])
                    continue;
                queue.erase({deg[x], x});
                --deg[x];
                queue.emplace(deg[x], x);
            }
        }
    }
    return chosen;
}

} // namespace hmfa
