#pragma once

#include "hmfa/discrepancy.hpp"
#include "hmfa/generators.hpp"
#include "hmfa/graph.hpp"
#include "hmfa/meanfield.hpp"
#include "hmfa/model.hpp"
#include "hmfa/simulation.hpp"
#include "hmfa/spectral.hpp"
#include "hmfa/state.hpp"
#include "hmfa/trajectory.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hmfa {

/// Graph source. kind is one of er, regular, file, or a NamedKind name.
struct GraphSpec {
    std::string kind = "complete";
    std::size_t n = 0;
    /// ER edge probability; alternatively `mean_degree` sets p = mean_degree/(n-1).
    std::optional<double> p;
    std::optional<double> mean_degree;
    /// Degree of a random regular graph.
    std::uint32_t degree = 0;
    std::string path;
    /// One experiment per seed; deterministic kinds use the first only.
    std::vector<std::uint64_t> seeds{1};
};

struct ModelConfig {
    ModelKind kind = ModelKind::sis;
    std::map<std::string, double> params;
    /// model_from_json document for ModelKind::custom.
    std::string custom_json;
};

enum class InitialKind { fraction_random, exact_set, v_minus, isolated_infected, star_hub };
InitialKind parse_initial_kind(std::string_view name);
std::string_view to_string(InitialKind kind);

/// How the initial configuration is chosen.
///
/// fraction_random: exactly round(f_s N) uniformly chosen vertices in each
///   listed state s; the rest take `fill` (default: the first state).
/// exact_set: `vertices` in `state`, the rest in `fill`.
/// v_minus: the first state on {i : d(i) < dbar}, the second elsewhere.
/// isolated_infected: `count` (default all) lowest-index isolated vertices in
///   `state`, the rest in `fill`. Needs an isolated vertex.
/// star_hub: vertex 0 of a star in `state`, the rest in `fill`.
struct InitialRule {
    InitialKind kind = InitialKind::fraction_random;
    std::map<std::string, double> fractions;
    std::string state = "I";
    std::string fill;
    std::vector<Vertex> vertices;
    std::optional<std::size_t> count;
};

struct ExperimentConfig {
    std::string name = "experiment";
    GraphSpec graph;
    ModelConfig model;
    InitialRule initial;
    double horizon = 1.0;
    double dt = 0.01;
    std::size_t replications = 1;
    std::uint64_t seed = 1;
    /// Worker threads for replications and the discrepancy sweep. Results do
    /// not depend on it and it is left out of the recorded provenance.
    unsigned threads = 1;
    /// Exact brute-force discrepancy up to this many vertices.
    std::size_t discrepancy_cap = 24;
    std::string output_dir = ".";
};

/// Parses a JSON experiment document. Unknown keys and invalid values throw
/// std::invalid_argument; relative file paths resolve against `base_dir`.
ExperimentConfig parse_experiment_config(std::string_view json, const std::string& base_dir = {});

/// Resolved config as compact JSON, without the thread count.
std::string resolved_config_json(const ExperimentConfig& cfg);

GeneratedGraph build_graph(const GraphSpec& spec, std::uint64_t seed);
ModelSpec build_model(const ModelConfig& cfg);

/// Throws std::invalid_argument when the rule does not fit the graph or model.
StateAssignment initial_condition(const InitialRule& rule, const Graph& g, const ModelSpec& m,
                                  std::uint64_t seed);

/// Exact del_max when n <= cap; otherwise min(1, lambda + 2 del_star) tagged
/// spectral_bound. Always includes del_star.
DiscrepancyReport analyze_discrepancy(const Graph& g, std::size_t cap, unsigned threads,
                                      std::optional<SpectralReport>* spectrum = nullptr);

/// Value of the discrepancy a report supports as an upper bound on del_max.
Measure discrepancy_value(const DiscrepancyReport& report);

struct Summary {
    double median = 0.0;
    double mean = 0.0;
    double max = 0.0;
};
Summary summarize(std::vector<double> values);
double median(std::vector<double> values);

struct ComparisonResult {
    std::string name;
    std::uint64_t graph_seed = 0;
    std::uint64_t simulation_seed = 0;
    GenerationInfo generation;
    GraphStats stats;
    DiscrepancyReport discrepancy;
    std::optional<SpectralReport> spectrum;
    Trajectory mean;
    OdeSolution ode;
    /// |mean xbar(t_k) - u(t_k)|_1.
    std::vector<double> error;
    double sup_error = 0.0;
    /// sup_k |xbar_run(t_k) - u(t_k)|_1 per run.
    std::vector<double> run_sup_error;
    /// sup_k |xbar_run(t_k) - mean xbar(t_k)|_1 per run.
    std::vector<double> run_fluctuation;
    Summary fluctuation_sup;
    /// Uses the discrepancy value above and the median fluctuation.
    ErrorBudget budget;
};

/// M runs from one initial configuration plus one mean-field solve from
/// u(0) = xbar(0) on the given graph.
ComparisonResult compare_on_graph(const ExperimentConfig& cfg, const Graph& g, const GenerationInfo& info,
                                  std::uint64_t graph_seed, std::size_t seed_index);

/// compare_on_graph for every graph seed in the config.
std::vector<ComparisonResult> compare(const ExperimentConfig& cfg);

/// Writes <name>_g<seed>_{mean,ode,error,runs}.csv and _summary.json into
/// cfg.output_dir. Returns the written paths.
std::vector<std::string> write_comparison(const ExperimentConfig& cfg, const ComparisonResult& r);

} // namespace hmfa
