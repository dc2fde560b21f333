#pragma once

#include "hmfa/graph.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace hmfa {

/// Edge-list text format: one "u v" pair per line, 0-indexed, each undirected
/// edge listed once. Lines starting with '#' are comments, except an optional
/// "# n=<count>" directive that fixes the vertex count (so trailing isolated
/// vertices survive a round trip). Without it n = 1 + largest index.
Graph read_edge_list(std::istream& in, std::optional<std::size_t> n = std::nullopt);
Graph load_edge_list(const std::string& path, std::optional<std::size_t> n = std::nullopt);

/// Writes the "# n=" directive followed by edges (u < v) in lexicographic order.
void write_edge_list(std::ostream& out, const Graph& g);
void save_edge_list(const std::string& path, const Graph& g);

} // namespace hmfa
