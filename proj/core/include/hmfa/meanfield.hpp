#pragma once

#include "hmfa/model.hpp"
#include "hmfa/ode.hpp"
#include "hmfa/trajectory.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hmfa {

/// f(u) = Q(u) u: f_s = sum_s' q0(s,s') u_s' + sum_{s',r} q1(s,s',r) u_s' u_r.
std::vector<double> f_rhs(const ModelSpec& m, std::span<const double> u);

struct OdeSolution {
    std::vector<std::string> states;
    std::vector<double> times;
    /// times.size() x |S|, row-major.
    std::vector<double> u;
    OdeStats stats;
    /// max_k |sum_s u_s(t_k) - 1| before projection.
    double max_sum_drift = 0.0;

    std::size_t rows() const noexcept { return times.size(); }
    double at(std::size_t row, std::size_t s) const { return u[row * states.size() + s]; }
};

/// Default stepper settings for the mean-field system.
OdeOptions hmfa_ode_options();

/// Solves du/dt = f(u) on make_grid(horizon, dt). Every accepted step is
/// clamped to the simplex (negatives to zero, then unit sum). Throws
/// std::invalid_argument unless u0 lies on the simplex within 1e-9.
OdeSolution solve_hmfa(const ModelSpec& m, std::span<const double> u0, double horizon, double dt,
                       const OdeOptions& options = hmfa_ode_options());

/// The solution as a Trajectory with nu_{s s'} = u_s u_s', the closure the
/// mean-field system assumes.
Trajectory to_trajectory(const OdeSolution& sol);

/// L1 Lipschitz constant of f on the simplex:
/// max_s' sum_s |q0(s,s')| + 2 |S| q1_max.
double lipschitz_bound(const ModelSpec& m);

struct ErrorBudget {
    double horizon = 0.0;
    std::size_t n = 0;
    double init_gap = 0.0;
    /// Fluctuation term; 0 when omitted.
    double fluct = 0.0;
    /// "empirical" when supplied, "omitted" otherwise. Never a certificate.
    std::string fluct_label = "omitted";
    double disc = 0.0;
    /// q1_max |S|^3 T.
    double c_t = 0.0;
    double l_f = 0.0;
    /// (init_gap + fluct + c_t disc) e^{l_f T}.
    double total = 0.0;
};

/// Grönwall-type bound on sup_t |xbar(t) - u(t)|_1. Throws
/// std::invalid_argument on negative or non-finite inputs.
ErrorBudget error_budget(const ModelSpec& m, double horizon, double init_gap, double disc, std::size_t n,
                         std::optional<double> fluct = std::nullopt);

} // namespace hmfa
