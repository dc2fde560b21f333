#include "hmfa/ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hmfa {

namespace {

// Dormand–Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - b* (error weights)
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

} // namespace

double project_to_simplex(std::vector<double>& y)
{
    double correction = 0.0;
    double sum = 0.0;
    for (auto& v : y) {
        if (v < 0.0) {
            correction += -v;
            v = 0.0;
        }
        sum += v;
    }
    if (sum > 0.0) {
        for (auto& v : y) {
            const double scaled = v / sum;
            correction += std::abs(scaled - v);
            v = scaled;
        }
    }
    return correction;
}

std::vector<std::vector<double>> integrate_on_grid(const OdeRhs& f, std::vector<double> y,
                                                   const std::vector<double>& grid,
                                                   const OdeOptions& options, const OdeProjection& project,
                                                   OdeStats* stats_out)
{
    if (grid.empty())
        throw std::invalid_argument("integrate_on_grid: empty grid");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("integrate_on_grid: grid must be strictly ascending");

    OdeStats stats;
    const std::size_t dim = y.size();
    std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim), k7(dim), tmp(dim), ynew(dim);
    auto eval = [&](const std::vector<double>& x, std::vector<double>& dx) {
        f(x, dx);
        ++stats.rhs_evaluations;
    };

    std::vector<std::vector<double>> out;
    out.reserve(grid.size());
    for (double v : y)
        stats.min_component = std::min(stats.min_component, v);
    out.push_back(y);

    eval(y, k1);
    double h = options.initial_step;
    if (h <= 0.0) {
        double scale = 0.0, slope = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            const double sc = options.abs_tol + options.rel_tol * std::abs(y[i]);
            scale = std::max(scale, std::abs(y[i]) / sc);
            slope = std::max(slope, std::abs(k1[i]) / sc);
        }
        h = (scale < 1e-5 || slope < 1e-5) ? 1e-6 : 0.01 * scale / slope;
        h = std::min(h, grid.back() - grid.front());
    }

    double t = grid.front();
    std::size_t next = 1;
    std::size_t steps = 0;
    while (next < grid.size()) {
        const double target = grid[next];
        const bool lands = t + h >= target - 1e-12 * std::max(1.0, std::abs(target));
        const double step = lands ? target - t : h;
        if (step < options.min_step && !lands)
            throw std::runtime_error("integrate_on_grid: step size underflow");
        if (++steps > options.max_steps)
            throw std::runtime_error("integrate_on_grid: exceeded the step budget");

        for (std::size_t i = 0; i < dim; ++i)
            tmp[i] = y[i] + step * a21 * k1[i];
        eval(tmp, k2);
        for (std::size_t i = 0; i < dim; ++i)
            tmp[i] = y[i] + step * (a31 * k1[i] + a32 * k2[i]);
        eval(tmp, k3);
        for (std::size_t i = 0; i < dim; ++i)
            tmp[i] = y[i] + step * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        eval(tmp, k4);
        for (std::size_t i = 0; i < dim; ++i)
            tmp[i] = y[i] + step * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        eval(tmp, k5);
        for (std::size_t i = 0; i < dim; ++i)
            tmp[i] = y[i] + step * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        eval(tmp, k6);
        for (std::size_t i = 0; i < dim; ++i)
            ynew[i] = y[i] + step * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        eval(ynew, k7);

        double err = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            const double e = step * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double sc = options.abs_tol + options.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            err = std::max(err, std::abs(e) / sc);
        }
        if (!std::isfinite(err))
            err = 1e10;

        const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        if (err <= 1.0) {
            ++stats.accepted;
            stats.max_error_estimate = std::max(stats.max_error_estimate, err);
            t = lands ? target : t + step;
            y.swap(ynew);
            for (double v : y)
                stats.min_component = std::min(stats.min_component, v);
            if (project) {
                stats.max_projection_correction = std::max(stats.max_projection_correction, project(y));
                eval(y, k1);
            } else {
                k1.swap(k7); // first-same-as-last
            }
            if (lands) {
                out.push_back(y);
                ++next;
                // keep the natural step instead of the truncated one
                h = std::max(h, step * factor);
            } else {
                h = step * factor;
            }
        } else {
            ++stats.rejected;
            h = step * std::max(0.2, factor);
            if (h < options.min_step)
                throw std::runtime_error("integrate_on_grid: step size underflow");
        }
    }
    if (stats_out)
        *stats_out = stats;
    return out;
}

} // namespace hmfa
