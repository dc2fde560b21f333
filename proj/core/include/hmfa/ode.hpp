#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

namespace hmfa {

struct OdeOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    /// 0 picks a step from the initial derivative.
    double initial_step = 0.0;
    double min_step = 1e-13;
    std::size_t max_steps = 50'000'000;
};

struct OdeStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t rhs_evaluations = 0;
    /// Largest scaled local error estimate among accepted steps (<= 1).
    double max_error_estimate = 0.0;
    /// Largest L1 change made by the projection hook.
    double max_projection_correction = 0.0;
    /// Smallest component seen before projection.
    double min_component = std::numeric_limits<double>::infinity();
};

/// dy/dt = f(y) for autonomous systems.
using OdeRhs = std::function<void(const std::vector<double>& y, std::vector<double>& dydt)>;
/// Applied after every accepted step; returns the L1 size of its correction.
using OdeProjection = std::function<double(std::vector<double>& y)>;

/// Adaptive Dormand–Prince 5(4) with steps truncated at the grid times, so the
/// solution at every grid point comes from an accepted step (no interpolation).
/// grid must be ascending with grid[0] the initial time. Returns one state per
/// grid point. Throws std::runtime_error on step-size underflow or when
/// max_steps is exhausted.
std::vector<std::vector<double>> integrate_on_grid(const OdeRhs& f, std::vector<double> y0,
                                                   const std::vector<double>& grid,
                                                   const OdeOptions& options = {},
                                                   const OdeProjection& project = {},
                                                   OdeStats* stats = nullptr);

/// Clamp tiny negatives to zero and rescale to unit sum. Returns the L1 change.
double project_to_simplex(std::vector<double>& y);

} // namespace hmfa
