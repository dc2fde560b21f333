#pragma once

#include "hmfa/graph.hpp"
#include "hmfa/model.hpp"
#include "hmfa/rng.hpp"
#include "hmfa/state.hpp"
#include "hmfa/trajectory.hpp"

#include <cstdint>
#include <limits>
#include <vector>

namespace hmfa {

struct Event {
    double time;
    Vertex vertex;
    State from;
    State to;
    friend bool operator==(const Event&, const Event&) = default;
};

/// Exact event-driven sampler of the continuous-time Markov chain on S^N.
///
/// Every vertex carries an exponential clock whose rate is its total outgoing
/// rate sum_{s != xi_i} q_{s xi_i}(phi_i). Clocks sit in an indexed min-heap
/// (next-reaction method): when a neighbor's state changes, only the firing
/// vertex and its neighbors recompute rates, and a surviving clock is rescaled
/// by old_rate/new_rate instead of being redrawn. Cost per event is
/// O(deg * |S|^2 + deg * log N).
class Simulator {
public:
    /// Throws std::invalid_argument if init does not fit g and m, and
    /// std::runtime_error if the total rate bound is not finite.
    Simulator(const Graph& g, const ModelSpec& m, StateAssignment init, std::uint64_t seed);

    double time() const noexcept { return time_; }
    std::uint64_t events() const noexcept { return events_; }
    const StateAssignment& state() const noexcept { return state_; }

    /// Fires every event with time <= t, then sets the clock to t.
    void advance_to(double t);
    /// Fires the next event if one exists; returns false when absorbed.
    bool step();
    /// True when no vertex has a positive rate.
    bool absorbed() const noexcept;

    /// Current xbar (|S|) and nu (|S| x |S|), maintained incrementally.
    std::vector<double> xbar() const;
    std::vector<double> nu() const;

    /// When set, every fired event is appended here.
    void record_events(std::vector<Event>* log) noexcept { log_ = log; }

private:
    double outgoing_rate(Vertex v) const;
    void reschedule(Vertex v, double new_rate);
    void fire(Vertex v);

    // indexed binary heap on clock_
    void heap_fix(std::size_t pos);
    bool heap_less(std::size_t a, std::size_t b) const noexcept;
    void heap_swap(std::size_t a, std::size_t b) noexcept;

    const Graph* g_;
    const ModelSpec* m_;
    StateAssignment state_;
    Rng rng_;
    std::size_t k_;
    double inv_mean_degree_;
    double time_ = 0.0;
    std::uint64_t events_ = 0;
    std::vector<std::uint32_t> neighbor_counts_; // n x |S|
    std::vector<double> rate_;
    std::vector<double> clock_;
    std::vector<Vertex> heap_;
    std::vector<std::size_t> position_;
    std::vector<std::uint64_t> population_;
    std::vector<std::uint64_t> pairs_; // |S| x |S| ordered edge counts
    std::vector<Event>* log_ = nullptr;
    mutable std::vector<double> scratch_;
};

/// One sample path observed on make_grid(horizon, dt).
Trajectory simulate(const Graph& g, const ModelSpec& m, const StateAssignment& init, double horizon,
                    double dt, std::uint64_t seed);

struct EnsembleOptions {
    std::size_t replications = 1;
    std::uint64_t master_seed = 1;
    unsigned threads = 1;
};

/// Independent replications; run r uses seed derive_seed(master_seed, r), so
/// the output does not depend on the thread count. Ordered by r.
std::vector<Trajectory> simulate_ensemble(const Graph& g, const ModelSpec& m, const StateAssignment& init,
                                          double horizon, double dt, const EnsembleOptions& options);

/// Pointwise mean over an ensemble, reduced in replication order.
Trajectory ensemble_mean(const std::vector<Trajectory>& runs);

} // namespace hmfa
