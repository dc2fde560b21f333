#pragma once

#include "hmfa/vertex_set.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace hmfa {

using Edge = std::pair<Vertex, Vertex>;

/// Immutable simple undirected graph in CSR form.
///
/// Neighbor lists are sorted. Construction rejects self-loops, duplicate
/// edges and the edgeless graph (mean degree must be positive); isolated
/// vertices are allowed.
class Graph {
public:
    /// Throws std::invalid_argument on n < 2, out-of-range endpoints,
    /// self-loops, duplicates, or an empty edge list.
    static Graph from_edges(std::size_t n, std::span<const Edge> edges);

    std::size_t size() const noexcept { return degrees_.size(); }
    std::size_t num_edges() const noexcept { return neighbors_.size() / 2; }

    std::span<const Vertex> neighbors(Vertex v) const noexcept
    {
        return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
    }
    std::uint32_t degree(Vertex v) const noexcept { return degrees_[v]; }
    std::span<const std::uint32_t> degrees() const noexcept { return degrees_; }
    std::uint32_t max_degree() const noexcept { return max_degree_; }

    /// vol([N]) = N * mean degree = 2m.
    std::uint64_t volume() const noexcept { return neighbors_.size(); }
    double mean_degree() const noexcept
    {
        return static_cast<double>(volume()) / static_cast<double>(size());
    }

    bool has_edge(Vertex u, Vertex v) const noexcept;

    /// Each edge once as (u, v) with u < v, lexicographically sorted.
    std::vector<Edge> edges() const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    Graph() = default;

    std::vector<std::size_t> offsets_;
    std::vector<Vertex> neighbors_;
    std::vector<std::uint32_t> degrees_;
    std::uint32_t max_degree_ = 0;
};

/// e(A, B) = sum over i in A, j in B of a_ij. Edges inside A∩B count twice.
std::uint64_t edge_count(const Graph& g, const VertexSet& a, const VertexSet& b);

/// vol(A) = e(A, [N]).
std::uint64_t volume(const Graph& g, const VertexSet& a);

struct GraphStats {
    std::size_t n = 0;
    std::size_t num_edges = 0;
    double mean_degree = 0.0;
    std::uint32_t min_degree = 0;
    std::uint32_t max_degree = 0;
    std::size_t num_components = 0;
    std::size_t largest_component = 0;
    /// Fraction of vertices outside a largest connected component.
    double theta = 0.0;
    /// Caro–Wei lower bound on the independence number: sum 1/(d(i)+1).
    double alpha_lower_caro_wei = 0.0;
    /// Turán lower bound N/(mean degree + 1).
    double alpha_lower_turan = 0.0;
    bool is_bipartite = false;
};

GraphStats graph_stats(const Graph& g);

/// Component id per vertex; ids are assigned in order of smallest member.
std::vector<std::uint32_t> connected_components(const Graph& g);

/// Vertices of one largest component (smallest component id among ties).
VertexSet largest_component(const Graph& g);

/// Two-colouring if g is bipartite: class of each vertex (0 or 1), with the
/// smallest vertex of every component in class 0. Empty if not bipartite.
std::vector<std::uint8_t> bipartition(const Graph& g);

/// Min-degree greedy independent set. Its size is at least the Caro–Wei bound.
VertexSet greedy_independent_set(const Graph& g);

} // namespace hmfa
