#include "hmfa/audit.hpp"

#include "json_io.hpp"

#include <algorithm>
#include <numeric>

namespace hmfa {

namespace {

void attach(AuditItem& item, const Graph& g, VertexSet a, VertexSet b)
{
    item.witness_delta = delta(g, a, b);
    item.witness = Witness{a.indices(), b.indices()};
}

} // namespace

AuditReport quasirandom_audit(const Graph& g, const AuditOptions& options)
{
    const auto& th = options.thresholds;
    const std::size_t n = g.size();
    const GraphStats stats = graph_stats(g);
    const bool small = n <= options.cap;

    AuditReport r;
    r.n = n;
    r.alpha_lower_caro_wei = stats.alpha_lower_caro_wei;
    r.alpha_lower_turan = stats.alpha_lower_turan;

    r.bipartite.value = stats.is_bipartite ? 1.0 : 0.0;
    r.bipartite.threshold = 0.5;
    r.bipartite.flagged = stats.is_bipartite;
    if (stats.is_bipartite && small) {
        const auto colour = bipartition(g);
        VertexSet c0(n), c1(n);
        for (Vertex v = 0; v < n; ++v)
            (colour[v] == 0 ? c0 : c1).insert(v);
        const VertexSet& larger = c0.size() >= c1.size() ? c0 : c1;
        attach(r.bipartite, g, larger, larger);
    }

    r.fragmented.value = stats.theta;
    r.fragmented.threshold = th.theta;
    r.fragmented.flagged = stats.theta > th.theta;
    if (stats.num_components > 1 && small) {
        const auto comp = connected_components(g);
        std::vector<std::size_t> sizes(stats.num_components, 0);
        for (auto c : comp)
            ++sizes[c];
        std::vector<std::uint32_t> order(sizes.size());
        std::iota(order.begin(), order.end(), 0u);
        std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return sizes[x] > sizes[y]; });
        // largest-first greedy fill towards N/2
        std::vector<bool> chosen(sizes.size(), false);
        std::size_t filled = 0;
        for (auto c : order) {
            if (2 * (filled + sizes[c]) <= n || filled == 0) {
                chosen[c] = true;
                filled += sizes[c];
            }
        }
        VertexSet a(n);
        for (Vertex v = 0; v < n; ++v)
            if (chosen[comp[v]])
                a.insert(v);
        // A = B = union of components: e(A, A) = vol(A), so delta is positive
        attach(r.fragmented, g, a, a);
    }

    const VertexSet greedy = greedy_independent_set(g);
    r.greedy_independent_size = greedy.size();
    const double alpha_lower = std::max(stats.alpha_lower_caro_wei, static_cast<double>(greedy.size()));
    r.independent_set.value = alpha_lower / static_cast<double>(n);
    r.independent_set.threshold = th.independent_ratio;
    r.independent_set.flagged = r.independent_set.value > th.independent_ratio;
    if (small)
        attach(r.independent_set, g, greedy, greedy);

    r.bounded_degree.value = stats.mean_degree;
    r.bounded_degree.threshold = th.mean_degree;
    r.bounded_degree.flagged = stats.mean_degree < th.mean_degree;
    if (small)
        attach(r.bounded_degree, g, greedy, greedy);

    if (small) {
        DiscrepancySelection which{};
        which.del_1 = false;
        which.del_2 = false;
        r.del_max = brute_force_discrepancies(g, which, BruteForceOptions{options.cap, options.threads}).del_max;
    }
    r.not_quasi_random =
        r.bipartite.flagged || r.fragmented.flagged || r.independent_set.flagged || r.bounded_degree.flagged;
    return r;
}

std::string to_json(const AuditReport& r, int indent)
{
    using detail::json;
    auto item = [](const AuditItem& it) {
        json j;
        j["flagged"] = it.flagged;
        j["value"] = it.value;
        j["threshold"] = it.threshold;
        if (it.witness)
            j["witness"] = json{{"a", it.witness->a}, {"b", it.witness->b}};
        if (it.witness_delta)
            j["witness_delta"] = *it.witness_delta;
        return j;
    };
    json j;
    j["n"] = r.n;
    j["bipartite"] = item(r.bipartite);
    j["fragmented"] = item(r.fragmented);
    j["independent_set"] = item(r.independent_set);
    j["bounded_degree"] = item(r.bounded_degree);
    j["alpha_lower_caro_wei"] = r.alpha_lower_caro_wei;
    j["alpha_lower_turan"] = r.alpha_lower_turan;
    j["greedy_independent_size"] = r.greedy_independent_size;
    if (r.del_max)
        j["del_max"] = detail::to_json_value(*r.del_max);
    j["not_quasi_random"] = r.not_quasi_random;
    return j.dump(indent);
}

} // namespace hmfa
