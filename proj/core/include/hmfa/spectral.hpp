#pragma once

#include "hmfa/graph.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace hmfa {

enum class EigenMethod { dense_full, iterative };
std::string_view to_string(EigenMethod m);

struct SpectralOptions {
    /// Matrices up to this order are solved densely.
    std::size_t dense_threshold = 2000;
    /// Power iteration stops when the Rayleigh quotient moves less than this.
    double tolerance = 1e-8;
    std::size_t max_iterations = 100000;
    /// Seed of the random start vector.
    std::uint64_t seed = 0x5eed5eedULL;
    /// Overrides the size-based choice of solver.
    std::optional<EigenMethod> force_method;
};

/// Spectrum summary of B = D^{-1/2} A D^{-1/2} on a (possibly induced) graph.
///
/// Vertices of degree zero within the restriction have no row in B; they are
/// dropped and listed in `excluded_isolated`.
struct SpectralReport {
    /// max(lambda_2, -lambda_min).
    double lambda_second = 0.0;
    double spectral_gap = 0.0;
    double lambda_1 = 0.0;
    double lambda_2 = 0.0;
    double lambda_min = 0.0;
    EigenMethod method = EigenMethod::dense_full;
    std::size_t matrix_order = 0;
    /// Power iterations spent (0 for the dense solver).
    std::size_t iterations = 0;
    std::optional<VertexSet> restricted_to;
    std::vector<Vertex> excluded_isolated;
};

/// Throws std::invalid_argument when the (restricted) graph has no edge.
SpectralReport spectral_report(const Graph& g, const std::optional<VertexSet>& restrict = std::nullopt,
                               const SpectralOptions& options = {});

struct MixingOptions {
    /// Exhaustive del_tilde is computed when n <= cap.
    std::size_t cap = 24;
    /// Random (A, B) pairs checked against the per-pair mixing inequality.
    std::size_t sampled_pairs = 2000;
    std::uint64_t seed = 0x6d1c1ULL;
    double tolerance = 1e-9;
    unsigned threads = 1;
    SpectralOptions spectral;
};

struct MixingCheck {
    /// lambda, the upper bound on del_tilde.
    double bound = 0.0;
    /// Exhaustive del_tilde when n <= cap.
    std::optional<double> exact;
    std::size_t pairs_checked = 0;
    std::size_t pair_violations = 0;
    /// Largest |delta_tilde(A,B)| / (lambda sqrt(vol A vol B) / vol) seen.
    double worst_pair_ratio = 0.0;
    bool holds = true;
};

MixingCheck mixing_bound_check(const Graph& g, const MixingOptions& options = {});

/// 2 sqrt(d - 1) / d: the level below which lambda of large d-regular graphs
/// cannot go. Throws std::invalid_argument for d < 2.
double alon_boppana_floor(unsigned d);

struct CoreOptions {
    /// Vertices with at least this many neighbors outside H are removed.
    std::uint32_t external_threshold = 100;
    SpectralOptions spectral;
};

struct CoreResult {
    VertexSet core;
    /// Vertices below the degree threshold, ascending.
    std::vector<Vertex> removed_init;
    /// Vertices removed by the external-neighbor loop, in removal order.
    std::vector<Vertex> removed_iter;
    /// Spectrum of the induced core; absent when the core has no edge.
    std::optional<SpectralReport> core_spectral;
    bool empty = false;
};

/// H starts as {i : d(i) >= target/2}; while some vertex of H has at least
/// `external_threshold` neighbors outside H, the smallest-index such vertex is
/// removed. Throws std::invalid_argument unless target > 0.
CoreResult extract_core(const Graph& g, double mean_degree_target, const CoreOptions& options = {});

} // namespace hmfa
