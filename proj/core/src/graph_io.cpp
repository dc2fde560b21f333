#include "hmfa/graph_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hmfa {

Graph read_edge_list(std::istream& in, std::optional<std::size_t> n)
{
    std::vector<Edge> edges;
    std::optional<std::size_t> declared;
    std::size_t max_index = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos)
            continue;
        if (line[first] == '#') {
            const auto pos = line.find("n=", first);
            if (pos != std::string::npos && line.find_first_not_of(" \t#", first) == pos)
                declared = std::stoull(line.substr(pos + 2));
            continue;
        }
        std::istringstream fields(line);
        long long u = -1;
        long long v = -1;
        std::string extra;
        if (!(fields >> u >> v) || (fields >> extra) || u < 0 || v < 0)
            throw std::invalid_argument("edge list line " + std::to_string(line_no) +
                                        ": expected two non-negative vertex indices");
        edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
        max_index = std::max<std::size_t>(max_index, static_cast<std::size_t>(std::max(u, v)));
    }
    std::size_t count = n ? *n : declared ? *declared : (edges.empty() ? 0 : max_index + 1);
    return Graph::from_edges(count, edges);
}

Graph load_edge_list(const std::string& path, std::optional<std::size_t> n)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open edge list '" + path + "'");
    return read_edge_list(in, n);
}

void write_edge_list(std::ostream& out, const Graph& g)
{
    out << "# n=" << g.size() << '\n';
    for (const auto& [u, v] : g.edges())
        out << u << ' ' << v << '\n';
}

void save_edge_list(const std::string& path, const Graph& g)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write edge list '" + path + "'");
    write_edge_list(out, g);
}

} // namespace hmfa
