#pragma once

#include "hmfa/discrepancy.hpp"
#include "hmfa/graph.hpp"

#include <optional>
#include <string>

namespace hmfa {

/// Finite-graph proxies for asymptotic conditions; a graph is flagged when the
/// measured value crosses the threshold.
struct AuditThresholds {
    /// theta above this flags a fragmented graph.
    double theta = 0.05;
    /// Independent-set lower bound / N above this flags a large independent set.
    double independent_ratio = 0.05;
    /// Mean degree below this flags bounded average degree.
    double mean_degree = 32.0;
};

struct AuditOptions {
    AuditThresholds thresholds;
    /// Witness discrepancies and exact del_max are computed when n <= cap.
    std::size_t cap = 24;
    unsigned threads = 1;
};

struct AuditItem {
    bool flagged = false;
    double value = 0.0;
    double threshold = 0.0;
    /// Construction that makes |delta| large when the condition holds.
    std::optional<Witness> witness;
    std::optional<double> witness_delta;
};

struct AuditReport {
    std::size_t n = 0;
    /// value is 1 when bipartite; witness A = B = the larger colour class.
    AuditItem bipartite;
    /// value theta; witness A = union of components closest to N/2, B = its complement.
    AuditItem fragmented;
    /// value max(Caro–Wei, greedy set size) / N; witness A = B = greedy set.
    AuditItem independent_set;
    /// value dbar; flagged when dbar < threshold. Witness as for independent_set.
    AuditItem bounded_degree;
    double alpha_lower_caro_wei = 0.0;
    double alpha_lower_turan = 0.0;
    std::size_t greedy_independent_size = 0;
    /// Exact del_max with witness when n <= cap.
    std::optional<Measure> del_max;
    /// True when any item is flagged.
    bool not_quasi_random = false;
};

AuditReport quasirandom_audit(const Graph& g, const AuditOptions& options = {});

std::string to_json(const AuditReport& r, int indent = 2);

} // namespace hmfa
