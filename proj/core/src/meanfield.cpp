#include "hmfa/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hmfa {

std::vector<double> f_rhs(const ModelSpec& m, std::span<const double> u)
{
    const std::size_t k = m.num_states();
    if (u.size() != k)
        throw std::invalid_argument("f_rhs: vector length does not match the model");
    std::vector<double> f(k, 0.0);
    for (const auto& t : m.constant_terms()) {
        const double flow = t.coefficient * u[t.from];
        f[t.to] += flow;
        f[t.from] -= flow;
    }
    for (const auto& t : m.linear_terms()) {
        const double flow = t.coefficient * u[t.from] * u[t.neighbor];
        f[t.to] += flow;
        f[t.from] -= flow;
    }
    return f;
}

OdeOptions hmfa_ode_options()
{
    OdeOptions o;
    o.abs_tol = 1e-10;
    o.rel_tol = 1e-10;
    return o;
}

OdeSolution solve_hmfa(const ModelSpec& m, std::span<const double> u0, double horizon, double dt,
                       const OdeOptions& options)
{
    const std::size_t k = m.num_states();
    if (u0.size() != k)
        throw std::invalid_argument("solve_hmfa: initial vector length does not match the model");
    double sum = 0.0;
    for (double v : u0) {
        if (!(v >= -1e-9))
            throw std::invalid_argument("solve_hmfa: initial vector must be non-negative");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("solve_hmfa: initial vector must sum to 1");

    OdeSolution sol;
    sol.states = m.states();
    sol.times = make_grid(horizon, dt);

    OdeRhs rhs = [&m](const std::vector<double>& u, std::vector<double>& du) { du = f_rhs(m, u); };
    double drift = 0.0;
    OdeProjection project = [&drift](std::vector<double>& u) {
        double s = 0.0;
        for (double v : u)
            s += v;
        drift = std::max(drift, std::abs(s - 1.0));
        return project_to_simplex(u);
    };
    std::vector<double> start(u0.begin(), u0.end());
    project_to_simplex(start);
    const auto states = integrate_on_grid(rhs, std::move(start), sol.times, options, project, &sol.stats);
    sol.max_sum_drift = drift;
    sol.u.reserve(states.size() * k);
    for (const auto& row : states)
        sol.u.insert(sol.u.end(), row.begin(), row.end());
    return sol;
}

Trajectory to_trajectory(const OdeSolution& sol)
{
    const std::size_t k = sol.states.size();
    Trajectory t;
    t.states = sol.states;
    t.times = sol.times;
    t.xbar = sol.u;
    t.nu.resize(sol.rows() * k * k);
    for (std::size_t row = 0; row < sol.rows(); ++row)
        for (std::size_t s = 0; s < k; ++s)
            for (std::size_t r = 0; r < k; ++r)
                t.nu[(row * k + s) * k + r] = sol.at(row, s) * sol.at(row, r);
    t.events.assign(sol.rows(), 0.0);
    return t;
}

double lipschitz_bound(const ModelSpec& m)
{
    const std::size_t k = m.num_states();
    double column = 0.0;
    for (std::size_t from = 0; from < k; ++from) {
        double c = 0.0;
        for (std::size_t to = 0; to < k; ++to)
            c += std::abs(m.q0(static_cast<State>(to), static_cast<State>(from)));
        column = std::max(column, c);
    }
    return column + 2.0 * static_cast<double>(k) * m.q1_max();
}

ErrorBudget error_budget(const ModelSpec& m, double horizon, double init_gap, double disc, std::size_t n,
                         std::optional<double> fluct)
{
    auto bad = [](double v) { return !std::isfinite(v) || v < 0.0; };
    if (bad(horizon) || bad(init_gap) || bad(disc) || (fluct && bad(*fluct)))
        throw std::invalid_argument("error_budget: inputs must be finite and non-negative");
    ErrorBudget b;
    b.horizon = horizon;
    b.n = n;
    b.init_gap = init_gap;
    if (fluct) {
        b.fluct = *fluct;
        b.fluct_label = "empirical";
    }
    b.disc = disc;
    const double k = static_cast<double>(m.num_states());
    b.c_t = m.q1_max() * k * k * k * horizon;
    b.l_f = lipschitz_bound(m);
    const double growth = std::exp(b.l_f * horizon);
    // keep the disc term exactly zero when c_t = 0
    const double disc_term = b.c_t == 0.0 ? 0.0 : b.c_t * disc;
    b.total = (init_gap + b.fluct + disc_term) * growth;
    return b;
}

} // namespace hmfa
