#include "hmfa/spectral.hpp"
#include "hmfa/discrepancy.hpp"
#include "hmfa/rng.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace hmfa {

std::string_view to_string(EigenMethod m)
{
    return m == EigenMethod::dense_full ? "dense_full" : "iterative";
}

namespace {

// B restricted to the non-isolated vertices of an induced subgraph, in CSR form
// with the normalization folded into the entries.
struct NormalizedAdjacency {
    std::size_t order = 0;
    std::vector<std::size_t> offsets;
    std::vector<std::uint32_t> cols;
    std::vector<double> values;
    std::vector<double> sqrt_degree;

    void apply(const std::vector<double>& x, std::vector<double>& y) const
    {
        for (std::size_t i = 0; i < order; ++i) {
            double acc = 0.0;
            for (std::size_t k = offsets[i]; k < offsets[i + 1]; ++k)
                acc += values[k] * x[cols[k]];
            y[i] = acc;
        }
    }
};

NormalizedAdjacency build(const Graph& g, const std::optional<VertexSet>& restrict,
                          std::vector<Vertex>& excluded)
{
    const std::size_t n = g.size();
    auto inside = [&](Vertex v) { return !restrict || restrict->contains(v); };

    std::vector<std::uint32_t> deg(n, 0);
    for (Vertex v = 0; v < n; ++v) {
        if (!inside(v))
            continue;
        for (Vertex w : g.neighbors(v))
            deg[v] += inside(w) ? 1 : 0;
    }
    std::vector<std::int64_t> local(n, -1);
    std::size_t order = 0;
    for (Vertex v = 0; v < n; ++v) {
        if (!inside(v))
            continue;
        if (deg[v] == 0)
            excluded.push_back(v);
        else
            local[v] = static_cast<std::int64_t>(order++);
    }
    if (order == 0)
        throw std::invalid_argument("spectral_report: the (restricted) graph has no edge");

    NormalizedAdjacency b;
    b.order = order;
    b.offsets.assign(order + 1, 0);
    b.sqrt_degree.resize(order);
    for (Vertex v = 0; v < n; ++v) {
        if (local[v] < 0)
            continue;
        const auto i = static_cast<std::size_t>(local[v]);
        b.sqrt_degree[i] = std::sqrt(static_cast<double>(deg[v]));
        for (Vertex w : g.neighbors(v))
            if (local[w] >= 0) {
                b.cols.push_back(static_cast<std::uint32_t>(local[w]));
                b.values.push_back(1.0 / std::sqrt(static_cast<double>(deg[v]) * deg[w]));
            }
        b.offsets[i + 1] = b.cols.size();
    }
    return b;
}

void fill_lambda(SpectralReport& r)
{
    r.lambda_second = std::max(r.lambda_2, -r.lambda_min);
    r.spectral_gap = 1.0 - r.lambda_second;
}

void dense_solve(const NormalizedAdjacency& b, SpectralReport& r)
{
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(b.order),
                                              static_cast<Eigen::Index>(b.order));
    for (std::size_t i = 0; i < b.order; ++i)
        for (std::size_t k = b.offsets[i]; k < b.offsets[i + 1]; ++k)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(b.cols[k])) = b.values[k];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("spectral_report: dense eigensolver failed");
    const auto& ev = solver.eigenvalues(); // ascending
    const auto k = ev.size();
    r.lambda_1 = ev(k - 1);
    r.lambda_2 = ev(k - 2);
    r.lambda_min = ev(0);
    r.method = EigenMethod::dense_full;
    r.iterations = 0;
}

double dot(const std::vector<double>& x, const std::vector<double>& y)
{
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        s += x[i] * y[i];
    return s;
}

void normalize(std::vector<double>& x)
{
    const double norm = std::sqrt(dot(x, x));
    for (auto& v : x)
        v /= norm;
}

void project_out(std::vector<double>& x, const std::vector<double>& unit)
{
    const double c = dot(x, unit);
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] -= c * unit[i];
}

// Power iteration on I + sign*B with the Perron vector projected out; returns
// the Rayleigh quotient of B at the converged vector.
double shifted_power(const NormalizedAdjacency& b, const std::vector<double>& perron, double sign,
                     const SpectralOptions& options, Rng& rng, std::size_t& iterations)
{
    std::vector<double> x(b.order), bx(b.order);
    for (auto& v : x)
        v = rng.uniform() - 0.5;
    project_out(x, perron);
    normalize(x);
    double previous = 0.0;
    double previous_step = 0.0;
    for (std::size_t it = 1; it <= options.max_iterations; ++it) {
        b.apply(x, bx);
        const double rayleigh = dot(x, bx);
        for (std::size_t i = 0; i < b.order; ++i)
            x[i] += sign * bx[i];
        project_out(x, perron);
        normalize(x);
        ++iterations;
        // Increments shrink geometrically; extrapolate the remaining tail so a
        // small gap cannot stop the sweep early.
        const double step = std::abs(rayleigh - previous);
        if (it > 2 && step < options.tolerance) {
            const double q = previous_step > 0.0 ? step / previous_step : 0.0;
            const double tail = q < 1.0 ? step * q / (1.0 - q) : std::numeric_limits<double>::infinity();
            if (tail < options.tolerance)
                return rayleigh;
        }
        previous_step = step;
        previous = rayleigh;
    }
    b.apply(x, bx);
    return dot(x, bx);
}

void iterative_solve(const NormalizedAdjacency& b, const SpectralOptions& options, SpectralReport& r)
{
    std::vector<double> perron = b.sqrt_degree;
    normalize(perron);
    std::vector<double> bp(b.order);
    b.apply(perron, bp);
    r.lambda_1 = dot(perron, bp);

    Rng rng(options.seed);
    r.iterations = 0;
    r.lambda_2 = shifted_power(b, perron, +1.0, options, rng, r.iterations);
    r.lambda_min = shifted_power(b, perron, -1.0, options, rng, r.iterations);
    r.method = EigenMethod::iterative;
}

} // namespace

SpectralReport spectral_report(const Graph& g, const std::optional<VertexSet>& restrict,
                               const SpectralOptions& options)
{
    if (restrict && restrict->universe() != g.size())
        throw std::invalid_argument("spectral_report: restriction has the wrong universe");
    SpectralReport r;
    r.restricted_to = restrict;
    const NormalizedAdjacency b = build(g, restrict, r.excluded_isolated);
    r.matrix_order = b.order;
    const EigenMethod method = options.force_method.value_or(
        b.order <= options.dense_threshold ? EigenMethod::dense_full : EigenMethod::iterative);
    if (method == EigenMethod::dense_full)
        dense_solve(b, r);
    else
        iterative_solve(b, options, r);
    fill_lambda(r);
    return r;
}

MixingCheck mixing_bound_check(const Graph& g, const MixingOptions& options)
{
    MixingCheck check;
    check.bound = spectral_report(g, std::nullopt, options.spectral).lambda_second;
    if (g.size() <= options.cap) {
        BruteForceOptions bf;
        bf.cap = options.cap;
        bf.threads = options.threads;
        check.exact = brute_force_del_tilde(g, bf).value;
        check.holds = *check.exact <= check.bound + options.tolerance;
    }

    Rng rng(options.seed);
    const double vol = static_cast<double>(g.volume());
    for (std::size_t k = 0; k < options.sampled_pairs; ++k) {
        VertexSet a(g.size()), b(g.size());
        const double pa = rng.uniform();
        const double pb = rng.uniform();
        for (Vertex v = 0; v < g.size(); ++v) {
            if (rng.bernoulli(pa))
                a.insert(v);
            if (rng.bernoulli(pb))
                b.insert(v);
        }
        const double lhs = std::abs(delta_tilde(g, a, b));
        const double rhs = check.bound *
                           std::sqrt(static_cast<double>(volume(g, a)) * static_cast<double>(volume(g, b))) /
                           vol;
        ++check.pairs_checked;
        if (lhs > rhs + options.tolerance)
            ++check.pair_violations;
        if (rhs > 0.0)
            check.worst_pair_ratio = std::max(check.worst_pair_ratio, lhs / rhs);
    }
    check.holds = check.holds && check.pair_violations == 0;
    return check;
}

double alon_boppana_floor(unsigned d)
{
    if (d < 2)
        throw std::invalid_argument("alon_boppana_floor: d must be >= 2");
    return 2.0 * std::sqrt(static_cast<double>(d) - 1.0) / static_cast<double>(d);
}

CoreResult extract_core(const Graph& g, double target, const CoreOptions& options)
{
    if (!(target > 0.0))
        throw std::invalid_argument("extract_core: mean degree target must be positive");
    const std::size_t n = g.size();
    CoreResult result;
    result.core = VertexSet(n);
    for (Vertex v = 0; v < n; ++v) {
        if (static_cast<double>(g.degree(v)) >= target / 2.0)
            result.core.insert(v);
        else
            result.removed_init.push_back(v);
    }

    std::vector<std::uint32_t> external(n, 0);
    std::set<Vertex> violators;
    for (Vertex v = 0; v < n; ++v) {
        if (!result.core.contains(v))
            continue;
        for (Vertex w : g.neighbors(v))
            external[v] += result.core.contains(w) ? 0 : 1;
        if (external[v] >= options.external_threshold)
            violators.insert(v);
    }
    while (!violators.empty()) {
        const Vertex v = *violators.begin();
        violators.erase(violators.begin());
        result.core.erase(v);
        result.removed_iter.push_back(v);
        for (Vertex w : g.neighbors(v)) {
            if (!result.core.contains(w))
                continue;
            if (++external[w] >= options.external_threshold)
                violators.insert(w);
        }
    }

    result.empty = result.core.empty();
    bool has_edge = false;
    for (Vertex v : result.core.indices()) {
        for (Vertex w : g.neighbors(v))
            if (result.core.contains(w)) {
                has_edge = true;
                break;
            }
        if (has_edge)
            break;
    }
    if (has_edge)
        result.core_spectral = spectral_report(g, result.core, options.spectral);
    return result;
}

} // namespace hmfa
