#include "hmfa/serialize.hpp"

#include "json_io.hpp"

#include <cmath>

namespace hmfa {

namespace detail {

json number(double v)
{
    if (std::isfinite(v))
        return v;
    if (std::isnan(v))
        return "nan";
    return v > 0 ? "inf" : "-inf";
}

json to_json_value(const GraphStats& s)
{
    json j;
    j["n"] = s.n;
    j["num_edges"] = s.num_edges;
    j["mean_degree"] = s.mean_degree;
    j["min_degree"] = s.min_degree;
    j["max_degree"] = s.max_degree;
    j["num_components"] = s.num_components;
    j["largest_component"] = s.largest_component;
    j["theta"] = s.theta;
    j["alpha_lower_caro_wei"] = s.alpha_lower_caro_wei;
    j["alpha_lower_turan"] = s.alpha_lower_turan;
    j["is_bipartite"] = s.is_bipartite;
    return j;
}

json to_json_value(const GenerationInfo& info)
{
    return json{{"attempts", info.attempts}, {"exactly_uniform", info.exactly_uniform}};
}

json to_json_value(const Measure& m)
{
    json j;
    j["value"] = number(m.value);
    j["method"] = std::string(to_string(m.method));
    if (m.witness) {
        j["witness"] = json{{"a", m.witness->a}, {"b", m.witness->b}};
    }
    return j;
}

json to_json_value(const DiscrepancyReport& r)
{
    json j;
    j["n"] = r.n;
    j["del_star"] = to_json_value(r.del_star);
    if (r.del_max)
        j["del_max"] = to_json_value(*r.del_max);
    if (r.del_1)
        j["del_1"] = to_json_value(*r.del_1);
    if (r.del_2)
        j["del_2"] = to_json_value(*r.del_2);
    if (r.del_tilde)
        j["del_tilde"] = to_json_value(*r.del_tilde);
    if (r.spectral_bound)
        j["spectral_bound"] = to_json_value(*r.spectral_bound);
    if (r.refused)
        j["refused"] = *r.refused;
    return j;
}

json to_json_value(const SpectralReport& r)
{
    json j;
    j["lambda_second"] = r.lambda_second;
    j["spectral_gap"] = r.spectral_gap;
    j["eigenvalue_extremes"] = json{{"lambda_1", r.lambda_1}, {"lambda_2", r.lambda_2}, {"lambda_min", r.lambda_min}};
    j["method"] = std::string(to_string(r.method));
    j["matrix_order"] = r.matrix_order;
    j["iterations"] = r.iterations;
    if (r.restricted_to)
        j["restricted_to"] = r.restricted_to->indices();
    j["excluded_isolated"] = r.excluded_isolated;
    return j;
}

json to_json_value(const CoreResult& r)
{
    json j;
    j["core_size"] = r.core.size();
    j["core"] = r.core.indices();
    j["removed_init"] = r.removed_init;
    j["removed_iter"] = r.removed_iter;
    j["empty"] = r.empty;
    if (r.core_spectral)
        j["core_spectral"] = to_json_value(*r.core_spectral);
    return j;
}

json to_json_value(const MixingCheck& c)
{
    json j;
    j["bound"] = c.bound;
    if (c.exact)
        j["exact_del_tilde"] = *c.exact;
    j["pairs_checked"] = c.pairs_checked;
    j["pair_violations"] = c.pair_violations;
    j["worst_pair_ratio"] = number(c.worst_pair_ratio);
    j["holds"] = c.holds;
    return j;
}

json to_json_value(const OdeStats& s)
{
    json j;
    j["accepted_steps"] = s.accepted;
    j["rejected_steps"] = s.rejected;
    j["rhs_evaluations"] = s.rhs_evaluations;
    j["max_error_estimate"] = s.max_error_estimate;
    j["max_projection_correction"] = s.max_projection_correction;
    j["min_component"] = number(s.min_component);
    return j;
}

json to_json_value(const ErrorBudget& b)
{
    json j;
    j["horizon"] = b.horizon;
    j["n"] = b.n;
    j["init_gap"] = b.init_gap;
    j["fluct"] = b.fluct;
    j["fluct_label"] = b.fluct_label;
    j["disc"] = b.disc;
    j["C_T"] = b.c_t;
    j["L_f"] = b.l_f;
    j["total"] = number(b.total);
    return j;
}

} // namespace detail

std::string to_json(const GraphStats& s, int indent) { return detail::to_json_value(s).dump(indent); }
std::string to_json(const DiscrepancyReport& r, int indent) { return detail::to_json_value(r).dump(indent); }
std::string to_json(const SpectralReport& r, int indent) { return detail::to_json_value(r).dump(indent); }
std::string to_json(const CoreResult& r, int indent) { return detail::to_json_value(r).dump(indent); }
std::string to_json(const MixingCheck& c, int indent) { return detail::to_json_value(c).dump(indent); }
std::string to_json(const ErrorBudget& b, int indent) { return detail::to_json_value(b).dump(indent); }

} // namespace hmfa
