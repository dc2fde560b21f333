#pragma once

#include "hmfa/graph.hpp"

#include <cstdint>
#include <string>
#include <string_view>

namespace hmfa {

/// Bookkeeping from a random generator.
struct GenerationInfo {
    /// Draws attempted until an acceptable graph came out (1 = first try).
    std::uint32_t attempts = 1;
    /// False when a random regular graph was produced by edge-swap repair and is
    /// therefore only approximately uniform.
    bool exactly_uniform = true;
};

struct GeneratedGraph {
    Graph graph;
    GenerationInfo info;
};

/// G(n, p): each unordered pair present independently with probability p.
/// Edgeless draws are redrawn, at most `max_attempts` times in total.
GeneratedGraph erdos_renyi(std::size_t n, double p, std::uint64_t seed,
                           std::uint32_t max_attempts = 1000);

struct RegularOptions {
    /// Pairing-model draws before falling back to edge-swap repair.
    std::uint32_t max_rejection_attempts = 20000;
    /// Skip rejection when the expected number of attempts,
    /// exp((d^2 - 1) / 4), exceeds this many.
    double max_expected_attempts = 2000.0;
    /// Random valid double-edge swaps applied after a repair, per edge.
    std::uint32_t mixing_swaps_per_edge = 10;
};

/// Random d-regular simple graph. Pairing model with full rejection of loops and
/// multi-edges (exactly uniform) where that is practical, else pairing model
/// followed by edge-swap repair and mixing (approximately uniform, recorded in
/// GenerationInfo).
GeneratedGraph random_regular(std::size_t n, std::uint32_t d, std::uint64_t seed,
                              const RegularOptions& options = {});

enum class NamedKind { star, complete, path, cycle, perfect_matching, complete_bipartite };

NamedKind parse_named_kind(std::string_view name);
std::string_view to_string(NamedKind kind);

/// Canonical deterministic graphs. The star's hub is vertex 0; complete
/// bipartite splits into classes {0..floor(n/2)-1} and the rest; the perfect
/// matching pairs 2k with 2k+1.
Graph named_graph(NamedKind kind, std::size_t n);

} // namespace hmfa
