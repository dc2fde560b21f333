#pragma once

#include "hmfa/graph.hpp"
#include "hmfa/model.hpp"

#include <cstdint>
#include <vector>

namespace hmfa {

/// Per-vertex state labels xi_i, with the number of states they range over.
class StateAssignment {
public:
    StateAssignment(std::size_t n, std::size_t num_states, State fill = 0);
    StateAssignment(std::vector<State> labels, std::size_t num_states);

    std::size_t size() const noexcept { return labels_.size(); }
    std::size_t num_states() const noexcept { return num_states_; }
    State operator[](Vertex v) const noexcept { return labels_[v]; }
    void set(Vertex v, State s);
    const std::vector<State>& labels() const noexcept { return labels_; }

    /// Vertices currently in state s.
    VertexSet members(State s) const;

    friend bool operator==(const StateAssignment&, const StateAssignment&) = default;

private:
    std::vector<State> labels_;
    std::size_t num_states_;
};

/// Throws std::invalid_argument unless xi matches g and m.
void check_compatible(const Graph& g, const ModelSpec& m, const StateAssignment& xi);

/// phi_{i,s} = (1/dbar) * #(neighbors of i in state s).
std::vector<double> phi(const Graph& g, const StateAssignment& xi, Vertex i);

/// Population fractions xbar_s.
std::vector<double> xbar(const StateAssignment& xi);

/// nu_{s s'} = e(V_s, V_s') / (N dbar), row-major |S| x |S|.
std::vector<double> nu(const Graph& g, const StateAssignment& xi);

/// [A, B] = sum_ij a_ij xi_{i,A} xi_{j,B}.
std::uint64_t pair_count(const Graph& g, const StateAssignment& xi, State a, State b);

/// [A, B, C] = sum over paths i - j - k with i != k of xi_{i,A} xi_{j,B} xi_{k,C}.
/// Walks that return to their start (i == k) are not triples.
std::uint64_t triple_count(const Graph& g, const StateAssignment& xi, State a, State b, State c);

} // namespace hmfa
