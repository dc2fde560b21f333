#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hmfa {

/// Fixed observation grid t_k = k * dt, k = 0..K, K = floor(T/dt) (with a
/// 1e-9 relative allowance so that e.g. T = 3, dt = 0.05 gives 61 points).
/// Throws std::invalid_argument unless T > 0 and dt > 0.
std::vector<double> make_grid(double horizon, double dt);

/// Population observables on a grid, from one stochastic run, an ensemble
/// mean, or an exact expectation.
struct Trajectory {
    std::vector<std::string> states;
    std::vector<double> times;
    /// times.size() x |S|, row-major.
    std::vector<double> xbar;
    /// times.size() x |S| x |S|, row-major.
    std::vector<double> nu;
    /// Events fired up to each grid time (an average for ensemble means).
    std::vector<double> events;
    std::uint64_t seed = 0;

    std::size_t num_states() const noexcept { return states.size(); }
    std::size_t rows() const noexcept { return times.size(); }
    double xbar_at(std::size_t row, std::size_t s) const { return xbar[row * num_states() + s]; }
    double nu_at(std::size_t row, std::size_t s, std::size_t r) const
    {
        return nu[(row * num_states() + s) * num_states() + r];
    }
};

/// CSV with header "t,xbar_<s>...,nu_<s>_<r> (upper triangle, r >= s)...,events",
/// one row per grid time, numbers printed with 17 significant digits.
/// `comment`, if non-empty, is written first as "# "-prefixed lines.
std::string trajectory_csv(const Trajectory& t, const std::string& comment = {});

/// Parses trajectory_csv output (comment lines skipped).
Trajectory parse_trajectory_csv(const std::string& text);

} // namespace hmfa
