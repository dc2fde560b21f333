#include "hmfa/master_equation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace hmfa {

std::size_t global_state_count(std::size_t n, std::size_t num_states)
{
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (total > std::numeric_limits<std::size_t>::max() / num_states)
            return 0;
        total *= num_states;
    }
    return total;
}

std::size_t encode_state(const StateAssignment& xi)
{
    std::size_t index = 0;
    for (std::size_t i = xi.size(); i-- > 0;)
        index = index * xi.num_states() + xi[static_cast<Vertex>(i)];
    return index;
}

StateAssignment decode_state(std::size_t index, std::size_t n, std::size_t num_states)
{
    std::vector<State> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        labels[i] = static_cast<State>(index % num_states);
        index /= num_states;
    }
    if (index != 0)
        throw std::out_of_range("decode_state: index out of range");
    return StateAssignment(std::move(labels), num_states);
}

namespace {

// Outgoing transitions of every configuration, grouped by source.
struct Generator {
    std::vector<std::size_t> offset;
    std::vector<std::uint32_t> target;
    std::vector<double> rate;
    std::vector<double> exit;
};

Generator build_generator(const Graph& g, const ModelSpec& m, std::size_t total)
{
    const std::size_t n = g.size();
    const std::size_t k = m.num_states();
    const double inv_dbar = 1.0 / g.mean_degree();

    std::vector<std::size_t> stride(n);
    std::size_t s = 1;
    for (std::size_t i = 0; i < n; ++i) {
        stride[i] = s;
        s *= k;
    }

    Generator gen;
    gen.offset.reserve(total + 1);
    gen.exit.assign(total, 0.0);
    std::vector<State> digits(n, 0);
    std::vector<double> phi(k);
    for (std::size_t x = 0; x < total; ++x) {
        gen.offset.push_back(gen.target.size());
        for (std::size_t i = 0; i < n; ++i) {
            std::fill(phi.begin(), phi.end(), 0.0);
            for (Vertex j : g.neighbors(static_cast<Vertex>(i)))
                phi[digits[j]] += inv_dbar;
            const State from = digits[i];
            for (std::size_t to = 0; to < k; ++to) {
                if (to == from || !m.can_transition(static_cast<State>(to), from))
                    continue;
                const double r = m.rate(static_cast<State>(to), from, phi.data());
                if (r <= 0.0)
                    continue;
                const std::size_t y = x + (to - from) * stride[i];
                gen.target.push_back(static_cast<std::uint32_t>(y));
                gen.rate.push_back(r);
                gen.exit[x] += r;
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (++digits[i] < k)
                break;
            digits[i] = 0;
        }
    }
    gen.offset.push_back(gen.target.size());
    return gen;
}

} // namespace

MasterEquationResult master_equation(const Graph& g, const ModelSpec& m, const StateAssignment& init,
                                     double horizon, double dt, const MasterEquationOptions& options)
{
    check_compatible(g, m, init);
    const std::size_t total = global_state_count(g.size(), m.num_states());
    if (total == 0 || total > options.state_cap)
        throw std::invalid_argument("master_equation: state space exceeds the cap of " +
                                    std::to_string(options.state_cap));
    std::vector<double> p(total, 0.0);
    p[encode_state(init)] = 1.0;
    return master_equation(g, m, std::move(p), horizon, dt, options);
}

MasterEquationResult master_equation(const Graph& g, const ModelSpec& m, std::vector<double> initial,
                                     double horizon, double dt, const MasterEquationOptions& options)
{
    const std::size_t n = g.size();
    const std::size_t k = m.num_states();
    const std::size_t total = global_state_count(n, k);
    if (total == 0 || total > options.state_cap)
        throw std::invalid_argument("master_equation: state space exceeds the cap of " +
                                    std::to_string(options.state_cap));
    if (total > std::numeric_limits<std::uint32_t>::max())
        throw std::invalid_argument("master_equation: state space too large");
    if (initial.size() != total)
        throw std::invalid_argument("master_equation: initial distribution has the wrong length");
    double mass = 0.0;
    for (double v : initial) {
        if (!(v >= 0.0))
            throw std::invalid_argument("master_equation: negative probability");
        mass += v;
    }
    if (std::abs(mass - 1.0) > 1e-9)
        throw std::invalid_argument("master_equation: initial distribution must sum to 1");

    const Generator gen = build_generator(g, m, total);
    const auto grid = make_grid(horizon, dt);

    OdeRhs rhs = [&gen, total](const std::vector<double>& p, std::vector<double>& dp) {
        for (std::size_t x = 0; x < total; ++x)
            dp[x] = -gen.exit[x] * p[x];
        for (std::size_t x = 0; x < total; ++x) {
            const double px = p[x];
            if (px == 0.0)
                continue;
            for (std::size_t e = gen.offset[x]; e < gen.offset[x + 1]; ++e)
                dp[gen.target[e]] += gen.rate[e] * px;
        }
    };

    MasterEquationResult result;
    result.num_global_states = total;
    auto dists = integrate_on_grid(rhs, std::move(initial), grid, options.ode, project_to_simplex, &result.stats);

    // Per-configuration observables.
    const double scale = 1.0 / (static_cast<double>(n));
    const double nu_scale = 1.0 / static_cast<double>(g.volume());
    std::vector<State> digits(n, 0);
    std::vector<std::uint32_t> count(k);
    std::vector<std::uint32_t> pairs(k * k);

    Trajectory& mean = result.mean;
    mean.states = m.states();
    mean.times = grid;
    mean.xbar.assign(grid.size() * k, 0.0);
    mean.nu.assign(grid.size() * k * k, 0.0);
    mean.events.assign(grid.size(), 0.0);
    std::vector<double> second(grid.size() * k, 0.0);
    const auto edges = g.edges();

    for (std::size_t x = 0; x < total; ++x) {
        std::fill(count.begin(), count.end(), 0);
        std::fill(pairs.begin(), pairs.end(), 0);
        for (std::size_t i = 0; i < n; ++i)
            ++count[digits[i]];
        for (const auto& [u, v] : edges) {
            ++pairs[digits[u] * k + digits[v]];
            ++pairs[digits[v] * k + digits[u]];
        }
        for (std::size_t row = 0; row < grid.size(); ++row) {
            const double px = dists[row][x];
            if (px == 0.0)
                continue;
            for (std::size_t s = 0; s < k; ++s) {
                const double f = count[s] * scale;
                mean.xbar[row * k + s] += px * f;
                second[row * k + s] += px * f * f;
            }
            for (std::size_t q = 0; q < k * k; ++q)
                mean.nu[row * k * k + q] += px * pairs[q] * nu_scale;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (++digits[i] < k)
                break;
            digits[i] = 0;
        }
    }
    result.xbar_variance.resize(grid.size() * k);
    for (std::size_t q = 0; q < second.size(); ++q)
        result.xbar_variance[q] = std::max(0.0, second[q] - mean.xbar[q] * mean.xbar[q]);
    if (options.keep_distributions)
        result.distributions = std::move(dists);
    return result;
}

} // namespace hmfa
