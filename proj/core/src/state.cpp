#include "hmfa/state.hpp"

#include <stdexcept>
#include <string>

namespace hmfa {

StateAssignment::StateAssignment(std::size_t n, std::size_t num_states, State fill)
    : labels_(n, fill), num_states_(num_states)
{
    if (fill >= num_states)
        throw std::invalid_argument("StateAssignment: fill state out of range");
}

StateAssignment::StateAssignment(std::vector<State> labels, std::size_t num_states)
    : labels_(std::move(labels)), num_states_(num_states)
{
    for (State s : labels_)
        if (s >= num_states_)
            throw std::invalid_argument("StateAssignment: label out of range");
}

void StateAssignment::set(Vertex v, State s)
{
    if (v >= labels_.size() || s >= num_states_)
        throw std::out_of_range("StateAssignment::set: vertex or state out of range");
    labels_[v] = s;
}

VertexSet StateAssignment::members(State s) const
{
    VertexSet out(labels_.size());
    for (Vertex v = 0; v < labels_.size(); ++v)
        if (labels_[v] == s)
            out.insert(v);
    return out;
}

void check_compatible(const Graph& g, const ModelSpec& m, const StateAssignment& xi)
{
    if (xi.size() != g.size())
        throw std::invalid_argument("state assignment has " + std::to_string(xi.size()) +
                                    " entries for a graph of " + std::to_string(g.size()) + " vertices");
    if (xi.num_states() != m.num_states())
        throw std::invalid_argument("state assignment and model disagree on the number of states");
}

std::vector<double> phi(const Graph& g, const StateAssignment& xi, Vertex i)
{
    std::vector<double> out(xi.num_states(), 0.0);
    const double scale = 1.0 / g.mean_degree();
    for (Vertex j : g.neighbors(i))
        out[xi[j]] += scale;
    return out;
}

std::vector<double> xbar(const StateAssignment& xi)
{
    std::vector<double> out(xi.num_states(), 0.0);
    for (State s : xi.labels())
        out[s] += 1.0;
    for (auto& v : out)
        v /= static_cast<double>(xi.size());
    return out;
}

std::vector<double> nu(const Graph& g, const StateAssignment& xi)
{
    const std::size_t k = xi.num_states();
    std::vector<std::uint64_t> counts(k * k, 0);
    for (Vertex i = 0; i < g.size(); ++i)
        for (Vertex j : g.neighbors(i))
            ++counts[xi[i] * k + xi[j]];
    std::vector<double> out(k * k);
    const double vol = static_cast<double>(g.volume());
    for (std::size_t e = 0; e < k * k; ++e)
        out[e] = static_cast<double>(counts[e]) / vol;
    return out;
}

std::uint64_t pair_count(const Graph& g, const StateAssignment& xi, State a, State b)
{
    std::uint64_t count = 0;
    for (Vertex i = 0; i < g.size(); ++i) {
        if (xi[i] != a)
            continue;
        for (Vertex j : g.neighbors(i))
            count += xi[j] == b ? 1 : 0;
    }
    return count;
}

std::uint64_t triple_count(const Graph& g, const StateAssignment& xi, State a, State b, State c)
{
    std::uint64_t count = 0;
    for (Vertex j = 0; j < g.size(); ++j) {
        if (xi[j] != b)
            continue;
        std::uint64_t left = 0;
        std::uint64_t right = 0;
        std::uint64_t both = 0; // neighbors counted as i and k at once
        for (Vertex w : g.neighbors(j)) {
            const bool is_a = xi[w] == a;
            const bool is_c = xi[w] == c;
            left += is_a ? 1 : 0;
            right += is_c ? 1 : 0;
            both += (is_a && is_c) ? 1 : 0;
        }
        count += left * right - both;
    }
    return count;
}

} // namespace hmfa
