#include "hmfa/discrepancy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace hmfa {

double delta(const Graph& g, const VertexSet& a, const VertexSet& b)
{
    const double n = static_cast<double>(g.size());
    return static_cast<double>(edge_count(g, a, b)) / static_cast<double>(g.volume()) -
           (static_cast<double>(a.size()) / n) * (static_cast<double>(b.size()) / n);
}

double delta_tilde(const Graph& g, const VertexSet& a, const VertexSet& b)
{
    const double vol = static_cast<double>(g.volume());
    return static_cast<double>(edge_count(g, a, b)) / vol -
           (static_cast<double>(volume(g, a)) / vol) * (static_cast<double>(volume(g, b)) / vol);
}

namespace {

VertexSet intersect(const VertexSet& x, const VertexSet& y)
{
    VertexSet out(x.universe());
    for (Vertex v : x.indices())
        if (y.contains(v))
            out.insert(v);
    return out;
}

} // namespace

double delta_tilde_sub(const Graph& g, const VertexSet& h, const VertexSet& a, const VertexSet& b)
{
    const auto vol_h = static_cast<double>(volume(g, h));
    if (vol_h <= 0.0)
        throw std::invalid_argument("delta_tilde_sub: vol(H) must be positive");
    const VertexSet ah = intersect(a, h);
    const VertexSet bh = intersect(b, h);
    return static_cast<double>(edge_count(g, ah, bh)) / vol_h -
           (static_cast<double>(volume(g, ah)) / vol_h) * (static_cast<double>(volume(g, bh)) / vol_h);
}

double del_star(const Graph& g)
{
    // Work in units of 1/N: |d(i) - dbar| = |N d(i) - vol| / N.
    const auto n = static_cast<std::int64_t>(g.size());
    const auto vol = static_cast<std::int64_t>(g.volume());
    std::int64_t total = 0;
    for (auto d : g.degrees())
        total += std::abs(n * static_cast<std::int64_t>(d) - vol);
    return static_cast<double>(total) / (2.0 * static_cast<double>(n) * static_cast<double>(vol));
}

VertexSet v_plus(const Graph& g)
{
    VertexSet s(g.size());
    const auto n = static_cast<std::uint64_t>(g.size());
    for (Vertex v = 0; v < g.size(); ++v)
        if (n * g.degree(v) >= g.volume())
            s.insert(v);
    return s;
}

VertexSet v_minus(const Graph& g)
{
    return v_plus(g).complement();
}

std::string_view to_string(Method m)
{
    switch (m) {
    case Method::exact_bruteforce: return "exact_bruteforce";
    case Method::closed_form: return "closed_form";
    case Method::spectral_bound: return "spectral_bound";
    }
    return "unknown";
}

namespace {

struct Best {
    std::int64_t value = -1;
    std::uint64_t a = 0;
    std::uint64_t b = 0;

    void offer(std::int64_t v, std::uint64_t ma, std::uint64_t mb)
    {
        if (v > value || (v == value && (ma < a || (ma == a && mb < b)))) {
            value = v;
            a = ma;
            b = mb;
        }
    }
    void merge(const Best& other) { offer(other.value, other.a, other.b); }
};

struct SweepResult {
    Best max, one, two, tilde;
    void merge(const SweepResult& o)
    {
        max.merge(o.max);
        one.merge(o.one);
        two.merge(o.two);
        tilde.merge(o.tilde);
    }
};

// Exhaustive sweep over subsets A of `members` (sorted global ids). Plain
// discrepancies are only meaningful when members = [N]; the volume variant
// uses vol(members) as its normalizer, which covers both the full graph and
// induced subgraphs.
class Sweep {
public:
    Sweep(const Graph& g, std::vector<Vertex> members, DiscrepancySelection which)
        : which_(which), members_(std::move(members))
    {
        const std::size_t u = members_.size();
        std::vector<std::int64_t> local(g.size(), -1);
        for (std::size_t k = 0; k < u; ++k)
            local[members_[k]] = static_cast<std::int64_t>(k);
        adj_.resize(u);
        weight_.resize(u);
        for (std::size_t k = 0; k < u; ++k) {
            weight_[k] = g.degree(members_[k]);
            vol_h_ += weight_[k];
            for (Vertex w : g.neighbors(members_[k]))
                if (local[w] >= 0)
                    adj_[k].push_back(static_cast<std::uint32_t>(local[w]));
        }
        n2_ = static_cast<std::int64_t>(g.size() * g.size());
        vol_ = static_cast<std::int64_t>(g.volume());
    }

    std::int64_t vol_h() const { return vol_h_; }
    std::int64_t plain_denominator() const { return vol_ * n2_; }

    SweepResult run(unsigned threads) const
    {
        const std::size_t u = members_.size();
        unsigned prefix_bits = 0;
        while (prefix_bits < u && (1ULL << prefix_bits) < 4ULL * threads && threads > 1)
            ++prefix_bits;
        const std::uint64_t chunks = 1ULL << prefix_bits;
        const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(threads, chunks));

        std::vector<SweepResult> partial(workers);
        auto work = [&](unsigned w) {
            for (std::uint64_t p = w; p < chunks; p += workers)
                sweep_chunk(p, prefix_bits, partial[w]);
        };
        if (workers <= 1) {
            work(0);
        } else {
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < workers; ++w)
                pool.emplace_back(work, w);
        }
        SweepResult total;
        for (const auto& r : partial)
            total.merge(r);
        return total;
    }

    std::vector<Vertex> to_global(std::uint64_t mask) const
    {
        std::vector<Vertex> out;
        while (mask != 0) {
            out.push_back(members_[static_cast<std::size_t>(std::countr_zero(mask))]);
            mask &= mask - 1;
        }
        return out;
    }

private:
    struct State {
        std::vector<std::int64_t> e_to_a; // neighbors of j inside A
        std::uint64_t mask = 0;
        std::int64_t size = 0;
        std::int64_t vol = 0;
        std::int64_t e_aa = 0;
    };

    void toggle(State& s, std::size_t k) const
    {
        const std::uint64_t bit = 1ULL << k;
        if ((s.mask & bit) == 0) {
            s.e_aa += 2 * s.e_to_a[k];
            for (auto j : adj_[k])
                ++s.e_to_a[j];
            s.mask |= bit;
            ++s.size;
            s.vol += weight_[k];
        } else {
            for (auto j : adj_[k])
                --s.e_to_a[j];
            s.e_aa -= 2 * s.e_to_a[k];
            s.mask &= ~bit;
            --s.size;
            s.vol -= weight_[k];
        }
    }

    void evaluate(const State& s, SweepResult& out) const
    {
        const std::size_t u = members_.size();
        if (which_.del_max || which_.del_2) {
            const std::int64_t shift = vol_ * s.size;
            std::int64_t pos = 0, neg = 0, pos2 = 0, neg2 = 0;
            std::uint64_t pos_mask = 0, neg_mask = 0, pos2_mask = 0, neg2_mask = 0;
            for (std::size_t j = 0; j < u; ++j) {
                const std::int64_t c = s.e_to_a[j] * n2_ - shift;
                const std::uint64_t bit = 1ULL << j;
                const bool outside = (s.mask & bit) == 0;
                if (c > 0) {
                    pos += c;
                    pos_mask |= bit;
                    if (outside) {
                        pos2 += c;
                        pos2_mask |= bit;
                    }
                } else if (c < 0) {
                    neg -= c;
                    neg_mask |= bit;
                    if (outside) {
                        neg2 -= c;
                        neg2_mask |= bit;
                    }
                }
            }
            if (which_.del_max) {
                out.max.offer(pos, s.mask, pos_mask);
                out.max.offer(neg, s.mask, neg_mask);
            }
            if (which_.del_2) {
                out.two.offer(pos2, s.mask, pos2_mask);
                out.two.offer(neg2, s.mask, neg2_mask);
            }
        }
        if (which_.del_1) {
            const std::int64_t v = s.e_aa * n2_ - vol_ * s.size * s.size;
            out.one.offer(v < 0 ? -v : v, s.mask, s.mask);
        }
        if (which_.del_tilde) {
            std::int64_t pos = 0, neg = 0;
            std::uint64_t pos_mask = 0, neg_mask = 0;
            for (std::size_t j = 0; j < u; ++j) {
                const std::int64_t c = s.e_to_a[j] * vol_h_ - s.vol * weight_[j];
                if (c > 0) {
                    pos += c;
                    pos_mask |= 1ULL << j;
                } else if (c < 0) {
                    neg -= c;
                    neg_mask |= 1ULL << j;
                }
            }
            out.tilde.offer(pos, s.mask, pos_mask);
            out.tilde.offer(neg, s.mask, neg_mask);
        }
    }

    void sweep_chunk(std::uint64_t prefix, unsigned prefix_bits, SweepResult& out) const
    {
        const std::size_t u = members_.size();
        const std::size_t low = u - prefix_bits;
        State s;
        s.e_to_a.assign(u, 0);
        for (unsigned t = 0; t < prefix_bits; ++t)
            if ((prefix >> t) & 1ULL)
                toggle(s, low + t);
        evaluate(s, out);
        const std::uint64_t count = 1ULL << low;
        for (std::uint64_t k = 1; k < count; ++k) {
            toggle(s, static_cast<std::size_t>(std::countr_zero(k)));
            evaluate(s, out);
        }
    }

    DiscrepancySelection which_;
    std::vector<Vertex> members_;
    std::vector<std::vector<std::uint32_t>> adj_;
    std::vector<std::int64_t> weight_;
    std::int64_t vol_h_ = 0;
    std::int64_t n2_ = 0;
    std::int64_t vol_ = 0;
};

void check_cap(std::size_t size, const BruteForceOptions& options)
{
    if (options.cap > brute_force_hard_limit)
        throw std::invalid_argument("brute-force cap may not exceed " +
                                    std::to_string(brute_force_hard_limit));
    if (size > options.cap)
        throw std::invalid_argument("brute force refused: " + std::to_string(size) +
                                    " vertices exceeds the cap of " + std::to_string(options.cap));
}

Measure exact(const Sweep& sweep, const Best& best, std::int64_t denominator)
{
    Measure m;
    m.value = static_cast<double>(best.value) / static_cast<double>(denominator);
    m.method = Method::exact_bruteforce;
    m.witness = Witness{sweep.to_global(best.a), sweep.to_global(best.b)};
    return m;
}

std::vector<Vertex> all_vertices(std::size_t n)
{
    std::vector<Vertex> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = static_cast<Vertex>(i);
    return v;
}

} // namespace

DiscrepancyReport brute_force_discrepancies(const Graph& g, DiscrepancySelection which,
                                            const BruteForceOptions& options)
{
    DiscrepancyReport report;
    report.n = g.size();
    report.del_star.value = del_star(g);
    report.del_star.method = Method::closed_form;
    report.del_star.witness = Witness{v_plus(g).indices(), all_vertices(g.size())};

    try {
        check_cap(g.size(), options);
    } catch (const std::invalid_argument& e) {
        report.refused = e.what();
        return report;
    }

    const Sweep sweep(g, all_vertices(g.size()), which);
    const SweepResult r = sweep.run(std::max(1u, options.threads));
    if (which.del_max)
        report.del_max = exact(sweep, r.max, sweep.plain_denominator());
    if (which.del_1)
        report.del_1 = exact(sweep, r.one, sweep.plain_denominator());
    if (which.del_2)
        report.del_2 = exact(sweep, r.two, sweep.plain_denominator());
    if (which.del_tilde)
        report.del_tilde = exact(sweep, r.tilde, sweep.vol_h() * sweep.vol_h());
    return report;
}

Measure brute_force_del_tilde(const Graph& g, const BruteForceOptions& options)
{
    check_cap(g.size(), options);
    DiscrepancySelection which{false, false, false, true};
    const Sweep sweep(g, all_vertices(g.size()), which);
    const SweepResult r = sweep.run(std::max(1u, options.threads));
    return exact(sweep, r.tilde, sweep.vol_h() * sweep.vol_h());
}

Measure brute_force_del_tilde_sub(const Graph& g, const VertexSet& h, const BruteForceOptions& options)
{
    if (h.universe() != g.size())
        throw std::invalid_argument("brute_force_del_tilde_sub: H has the wrong universe");
    check_cap(h.size(), options);
    DiscrepancySelection which{false, false, false, true};
    const Sweep sweep(g, h.indices(), which);
    if (sweep.vol_h() == 0)
        throw std::invalid_argument("brute_force_del_tilde_sub: vol(H) must be positive");
    const SweepResult r = sweep.run(std::max(1u, options.threads));
    return exact(sweep, r.tilde, sweep.vol_h() * sweep.vol_h());
}

} // namespace hmfa
