#pragma once

#include "hmfa/experiments.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hmfa {

/// er and regular grow the mean degree at fixed n; complete and matching grow n.
enum class Family { er, regular, complete, matching };
Family parse_family(std::string_view name);
std::string_view to_string(Family f);

struct ConvergenceConfig {
    std::string name = "convergence";
    Family family = Family::complete;
    /// Vertex count for er and regular.
    std::size_t n = 0;
    /// Mean degrees (er, regular) or sizes (complete, matching), ascending.
    std::vector<double> ladder;
    ModelConfig model;
    InitialRule initial;
    double horizon = 1.0;
    double dt = 0.01;
    std::size_t replications = 1;
    /// Graph seeds; deterministic families use the first only.
    std::vector<std::uint64_t> seeds{1};
    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::size_t discrepancy_cap = 24;
    std::string output_dir = ".";
};

ConvergenceConfig parse_convergence_config(std::string_view json, const std::string& base_dir = {});

/// The compare configuration used for one ladder rung.
ExperimentConfig rung_config(const ConvergenceConfig& cfg, std::size_t rung);

struct ConvergenceRow {
    double x = 0.0;
    std::size_t n = 0;
    std::size_t graphs = 0;
    /// Medians over graph seeds.
    double mean_degree = 0.0;
    double theta = 0.0;
    double lambda = 0.0;
    double del_star = 0.0;
    /// Exact del_max per graph seed when n <= cap.
    std::vector<double> del_max;
    /// Median over graph seeds of sup_t |mean xbar - u|_1.
    double sup_error = 0.0;
    /// Median over all runs of the per-run sup error.
    double run_sup_error = 0.0;
    /// Median over all runs of sup_t |xbar_run - mean xbar|_1.
    double fluctuation = 0.0;
};

struct ConvergenceTable {
    Family family = Family::complete;
    std::vector<ConvergenceRow> rows;
    /// Least-squares slopes of log(value) against log(x); absent with fewer
    /// than two rows or a non-positive value.
    std::optional<double> slope_sup_error;
    std::optional<double> slope_run_sup_error;
    std::optional<double> slope_fluctuation;
};

/// Least-squares slope of log(y) on log(x). Throws std::invalid_argument on
/// non-positive entries, mismatched lengths or fewer than two points.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

ConvergenceTable convergence_study(const ConvergenceConfig& cfg);

/// CSV with one row per rung; `comment` lines go first.
/// Compact JSON of the resolved configuration plus the derived per-rung seeds.
std::string resolved_config_json(const ConvergenceConfig& cfg);

std::string convergence_csv(const ConvergenceTable& t, const std::string& comment = {});
std::string to_json(const ConvergenceTable& t, int indent = 2);
/// Table JSON with the resolved configuration embedded under "config".
std::string to_json(const ConvergenceTable& t, const ConvergenceConfig& cfg, int indent = 2);

} // namespace hmfa
