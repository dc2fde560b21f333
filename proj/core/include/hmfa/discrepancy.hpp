#pragma once

#include "hmfa/graph.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hmfa {

/// delta(A, B) = e(A,B)/(N dbar) - (|A|/N)(|B|/N).
double delta(const Graph& g, const VertexSet& a, const VertexSet& b);

/// Volume discrepancy: e(A,B)/vol - vol(A) vol(B) / vol^2.
double delta_tilde(const Graph& g, const VertexSet& a, const VertexSet& b);

/// Volume discrepancy on the induced subgraph H:
/// e(A∩H, B∩H)/vol(H) - vol(A∩H) vol(B∩H) / vol(H)^2, with vol taken from
/// the full-graph degrees. vol(H) must be positive.
double delta_tilde_sub(const Graph& g, const VertexSet& h, const VertexSet& a, const VertexSet& b);

/// Degree heterogeneity (1/(2 N dbar)) sum |d(i) - dbar|; zero iff g is regular.
double del_star(const Graph& g);

/// {i : d(i) >= dbar} and {i : d(i) < dbar}.
VertexSet v_plus(const Graph& g);
VertexSet v_minus(const Graph& g);

enum class Method { exact_bruteforce, closed_form, spectral_bound };
std::string_view to_string(Method m);

/// Maximizing pair, as sorted vertex indices.
struct Witness {
    std::vector<Vertex> a;
    std::vector<Vertex> b;
};

struct Measure {
    double value = 0.0;
    Method method = Method::exact_bruteforce;
    std::optional<Witness> witness;
};

struct DiscrepancyReport {
    std::size_t n = 0;
    Measure del_star;
    std::optional<Measure> del_max;
    std::optional<Measure> del_1;
    std::optional<Measure> del_2;
    std::optional<Measure> del_tilde;
    /// lambda, an upper bound on del_tilde.
    std::optional<Measure> spectral_bound;
    /// Set when brute force was requested but refused.
    std::optional<std::string> refused;
};

/// Which exhaustive maxima to compute in one sweep.
struct DiscrepancySelection {
    bool del_max = true;
    bool del_1 = true;
    bool del_2 = true;
    bool del_tilde = false;
};

struct BruteForceOptions {
    /// Largest n swept exhaustively.
    std::size_t cap = 24;
    /// Worker threads; results do not depend on this.
    unsigned threads = 1;
};

/// Hard ceiling on BruteForceOptions::cap (subsets are held in 64-bit masks).
inline constexpr std::size_t brute_force_hard_limit = 40;

/// Exact maxima by a sweep over all 2^N sets A (Gray-code order). For fixed A,
/// delta(A, B) is a sum of per-vertex contributions over B, so the best B is
/// the set of vertices with positive (or, for the minimum, negative)
/// contribution. Ties resolve to the smallest (mask(A), mask(B)) with vertex i
/// at bit i. When n > cap the selected fields stay empty and `refused` is set.
DiscrepancyReport brute_force_discrepancies(const Graph& g, DiscrepancySelection which = {},
                                            const BruteForceOptions& options = {});

/// Exact max |delta_tilde| over all pairs. Throws std::invalid_argument above the cap.
Measure brute_force_del_tilde(const Graph& g, const BruteForceOptions& options = {});

/// Exact max |delta_tilde_sub| for the subgraph H (sweep over subsets of H).
/// Throws std::invalid_argument when |H| exceeds the cap or vol(H) = 0.
Measure brute_force_del_tilde_sub(const Graph& g, const VertexSet& h,
                                  const BruteForceOptions& options = {});

} // namespace hmfa
