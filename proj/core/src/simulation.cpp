#include "hmfa/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace hmfa {

namespace {
constexpr double never = std::numeric_limits<double>::infinity();
}

Simulator::Simulator(const Graph& g, const ModelSpec& m, StateAssignment init, std::uint64_t seed)
    : g_(&g), m_(&m), state_(std::move(init)), rng_(seed), k_(m.num_states()),
      inv_mean_degree_(1.0 / g.mean_degree()), scratch_(m.num_states())
{
    check_compatible(g, m, state_);
    const double n = static_cast<double>(g.size());
    const double k = static_cast<double>(k_);
    const double bound =
        n * (m.q0_max() * k + m.q1_max() * k * static_cast<double>(g.max_degree()) * inv_mean_degree_);
    if (!std::isfinite(bound))
        throw std::runtime_error("simulate: total event rate bound is not finite");

    const std::size_t nv = g.size();
    neighbor_counts_.assign(nv * k_, 0);
    population_.assign(k_, 0);
    pairs_.assign(k_ * k_, 0);
    for (Vertex v = 0; v < nv; ++v) {
        ++population_[state_[v]];
        for (Vertex w : g.neighbors(v)) {
            ++neighbor_counts_[v * k_ + state_[w]];
            ++pairs_[state_[v] * k_ + state_[w]];
        }
    }

    rate_.assign(nv, 0.0);
    clock_.assign(nv, never);
    heap_.resize(nv);
    position_.resize(nv);
    for (Vertex v = 0; v < nv; ++v) {
        rate_[v] = outgoing_rate(v);
        if (rate_[v] > 0.0)
            clock_[v] = rng_.exponential(rate_[v]);
        heap_[v] = v;
        position_[v] = v;
    }
    // a sorted array is a valid heap
    std::sort(heap_.begin(), heap_.end(), [this](Vertex a, Vertex b) {
        return clock_[a] < clock_[b] || (clock_[a] == clock_[b] && a < b);
    });
    for (std::size_t i = 0; i < nv; ++i)
        position_[heap_[i]] = i;
}

double Simulator::outgoing_rate(Vertex v) const
{
    const State from = state_[v];
    const std::uint32_t* counts = &neighbor_counts_[v * k_];
    for (std::size_t s = 0; s < k_; ++s)
        scratch_[s] = counts[s] * inv_mean_degree_;
    double total = 0.0;
    for (std::size_t to = 0; to < k_; ++to)
        if (to != from && m_->can_transition(static_cast<State>(to), from))
            total += m_->rate(static_cast<State>(to), from, scratch_.data());
    return total;
}

bool Simulator::heap_less(std::size_t a, std::size_t b) const noexcept
{
    const double ca = clock_[heap_[a]];
    const double cb = clock_[heap_[b]];
    return ca < cb || (ca == cb && heap_[a] < heap_[b]);
}

void Simulator::heap_swap(std::size_t a, std::size_t b) noexcept
{
    std::swap(heap_[a], heap_[b]);
    position_[heap_[a]] = a;
    position_[heap_[b]] = b;
}

void Simulator::heap_fix(std::size_t pos)
{
    while (pos > 0) {
        const std::size_t parent = (pos - 1) / 2;
        if (!heap_less(pos, parent))
            break;
        heap_swap(pos, parent);
        pos = parent;
    }
    const std::size_t n = heap_.size();
    for (;;) {
        const std::size_t l = 2 * pos + 1;
        const std::size_t r = l + 1;
        std::size_t best = pos;
        if (l < n && heap_less(l, best))
            best = l;
        if (r < n && heap_less(r, best))
            best = r;
        if (best == pos)
            break;
        heap_swap(pos, best);
        pos = best;
    }
}

void Simulator::reschedule(Vertex v, double new_rate)
{
    const double old_rate = rate_[v];
    if (new_rate == old_rate)
        return;
    rate_[v] = new_rate;
    if (new_rate <= 0.0)
        clock_[v] = never;
    else if (old_rate <= 0.0)
        clock_[v] = time_ + rng_.exponential(new_rate);
    else
        clock_[v] = time_ + (old_rate / new_rate) * (clock_[v] - time_);
    heap_fix(position_[v]);
}

void Simulator::fire(Vertex v)
{
    const State from = state_[v];
    const std::uint32_t* counts = &neighbor_counts_[v * k_];
    for (std::size_t s = 0; s < k_; ++s)
        scratch_[s] = counts[s] * inv_mean_degree_;
    const double target = rng_.uniform() * rate_[v];
    double acc = 0.0;
    State to = from;
    for (std::size_t s = 0; s < k_; ++s) {
        if (s == from || !m_->can_transition(static_cast<State>(s), from))
            continue;
        const double r = m_->rate(static_cast<State>(s), from, scratch_.data());
        if (r <= 0.0)
            continue;
        to = static_cast<State>(s);
        acc += r;
        if (target < acc)
            break;
    }
    if (to == from)
        throw std::logic_error("simulate: fired a vertex without an enabled transition");

    if (log_)
        log_->push_back({time_, v, from, to});
    state_.set(v, to);
    --population_[from];
    ++population_[to];
    ++events_;
    for (std::size_t r = 0; r < k_; ++r) {
        const std::uint64_t c = counts[r];
        pairs_[from * k_ + r] -= c;
        pairs_[r * k_ + from] -= c;
        pairs_[to * k_ + r] += c;
        pairs_[r * k_ + to] += c;
    }

    for (Vertex w : g_->neighbors(v)) {
        --neighbor_counts_[w * k_ + from];
        ++neighbor_counts_[w * k_ + to];
        reschedule(w, outgoing_rate(w));
    }
    rate_[v] = outgoing_rate(v);
    clock_[v] = rate_[v] > 0.0 ? time_ + rng_.exponential(rate_[v]) : never;
    heap_fix(position_[v]);
}

bool Simulator::absorbed() const noexcept
{
    return heap_.empty() || clock_[heap_[0]] == never;
}

bool Simulator::step()
{
    if (absorbed())
        return false;
    const Vertex v = heap_[0];
    time_ = clock_[v];
    fire(v);
    return true;
}

void Simulator::advance_to(double t)
{
    while (!heap_.empty() && clock_[heap_[0]] <= t) {
        const Vertex v = heap_[0];
        time_ = clock_[v];
        fire(v);
    }
    time_ = std::max(time_, t);
}

std::vector<double> Simulator::xbar() const
{
    std::vector<double> out(k_);
    const double n = static_cast<double>(g_->size());
    for (std::size_t s = 0; s < k_; ++s)
        out[s] = static_cast<double>(population_[s]) / n;
    return out;
}

std::vector<double> Simulator::nu() const
{
    std::vector<double> out(k_ * k_);
    const double vol = static_cast<double>(g_->volume());
    for (std::size_t e = 0; e < k_ * k_; ++e)
        out[e] = static_cast<double>(pairs_[e]) / vol;
    return out;
}

Trajectory simulate(const Graph& g, const ModelSpec& m, const StateAssignment& init, double horizon,
                    double dt, std::uint64_t seed)
{
    Trajectory t;
    t.states = m.states();
    t.times = make_grid(horizon, dt);
    t.seed = seed;
    Simulator sim(g, m, init, seed);
    const std::size_t k = m.num_states();
    t.xbar.reserve(t.times.size() * k);
    t.nu.reserve(t.times.size() * k * k);
    for (double time : t.times) {
        sim.advance_to(time);
        const auto x = sim.xbar();
        const auto v = sim.nu();
        t.xbar.insert(t.xbar.end(), x.begin(), x.end());
        t.nu.insert(t.nu.end(), v.begin(), v.end());
        t.events.push_back(static_cast<double>(sim.events()));
    }
    return t;
}

std::vector<Trajectory> simulate_ensemble(const Graph& g, const ModelSpec& m, const StateAssignment& init,
                                          double horizon, double dt, const EnsembleOptions& options)
{
    if (options.replications == 0)
        throw std::invalid_argument("simulate_ensemble: need at least one replication");
    std::vector<Trajectory> runs(options.replications);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t r = next++; r < runs.size(); r = next++)
            runs[r] = simulate(g, m, init, horizon, dt, derive_seed(options.master_seed, r));
    };
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(std::max(1u, options.threads), runs.size()));
    if (workers == 1) {
        work();
    } else {
        // Exceptions thrown in workers are rethrown after the join.
        std::vector<std::exception_ptr> errors(workers);
        {
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < workers; ++w)
                pool.emplace_back([&, w] {
                    try {
                        work();
                    } catch (...) {
                        errors[w] = std::current_exception();
                        next = runs.size();
                    }
                });
        }
        for (auto& e : errors)
            if (e)
                std::rethrow_exception(e);
    }
    return runs;
}

Trajectory ensemble_mean(const std::vector<Trajectory>& runs)
{
    if (runs.empty())
        throw std::invalid_argument("ensemble_mean: empty ensemble");
    Trajectory mean = runs.front();
    for (std::size_t r = 1; r < runs.size(); ++r) {
        for (std::size_t i = 0; i < mean.xbar.size(); ++i)
            mean.xbar[i] += runs[r].xbar[i];
        for (std::size_t i = 0; i < mean.nu.size(); ++i)
            mean.nu[i] += runs[r].nu[i];
        for (std::size_t i = 0; i < mean.events.size(); ++i)
            mean.events[i] += runs[r].events[i];
    }
    const double m = static_cast<double>(runs.size());
    for (auto& v : mean.xbar)
        v /= m;
    for (auto& v : mean.nu)
        v /= m;
    for (auto& v : mean.events)
        v /= m;
    return mean;
}

} // namespace hmfa
