#pragma once

#include "hmfa/graph.hpp"
#include "hmfa/model.hpp"
#include "hmfa/ode.hpp"
#include "hmfa/state.hpp"
#include "hmfa/trajectory.hpp"

#include <cstddef>
#include <vector>

namespace hmfa {

struct MasterEquationOptions {
    /// Largest |S|^N integrated.
    std::size_t state_cap = 4096;
    OdeOptions ode;
    /// Keep the full distribution at every grid time.
    bool keep_distributions = false;
};

struct MasterEquationResult {
    /// E[xbar(t)] and E[nu(t)] on the grid; events are zero.
    Trajectory mean;
    /// Var[xbar_s(t)], rows x |S|.
    std::vector<double> xbar_variance;
    /// Probability vectors over S^N, one per grid time, when requested.
    std::vector<std::vector<double>> distributions;
    std::size_t num_global_states = 0;
    OdeStats stats;
};

/// Number of configurations |S|^N, or 0 when it overflows size_t.
std::size_t global_state_count(std::size_t n, std::size_t num_states);

/// Mixed-radix index with vertex 0 as the least significant digit.
std::size_t encode_state(const StateAssignment& xi);
StateAssignment decode_state(std::size_t index, std::size_t n, std::size_t num_states);

/// Integrates the forward equations dp/dt = p Q on S^N from a point mass at
/// `init`. Throws std::invalid_argument when |S|^N exceeds the cap.
MasterEquationResult master_equation(const Graph& g, const ModelSpec& m, const StateAssignment& init,
                                     double horizon, double dt, const MasterEquationOptions& options = {});

/// Same, from an arbitrary initial distribution over S^N (must sum to 1).
MasterEquationResult master_equation(const Graph& g, const ModelSpec& m, std::vector<double> initial,
                                     double horizon, double dt, const MasterEquationOptions& options = {});

} // namespace hmfa
