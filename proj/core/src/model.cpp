#include "hmfa/model.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace hmfa {

ModelSpec::ModelSpec(std::string name, std::vector<std::string> states, const std::vector<Term>& constant,
                     const std::vector<Term>& linear)
    : name_(std::move(name)), states_(std::move(states)), k_(states_.size())
{
    if (k_ < 2)
        throw std::invalid_argument("model needs at least two states");
    if (k_ > 255)
        throw std::invalid_argument("model has too many states");
    if (std::set<std::string>(states_.begin(), states_.end()).size() != k_)
        throw std::invalid_argument("model state labels must be distinct");

    q0_.assign(k_ * k_, 0.0);
    q1_.assign(k_ * k_ * k_, 0.0);
    auto check = [&](const Term& t, bool linear_term) {
        if (t.to >= k_ || t.from >= k_ || (linear_term && t.neighbor >= k_))
            throw std::invalid_argument("model term refers to an unknown state");
        if (t.to == t.from)
            throw std::invalid_argument("model terms must be off-diagonal; diagonals are implied");
        if (!(t.coefficient >= 0.0) || !std::isfinite(t.coefficient))
            throw std::invalid_argument("model coefficients must be finite and non-negative");
    };
    for (const auto& t : constant) {
        check(t, false);
        q0_[t.to * k_ + t.from] += t.coefficient;
    }
    for (const auto& t : linear) {
        check(t, true);
        q1_[(t.to * k_ + t.from) * k_ + t.neighbor] += t.coefficient;
    }

    reachable_.assign(k_ * k_, false);
    for (std::size_t to = 0; to < k_; ++to)
        for (std::size_t from = 0; from < k_; ++from) {
            if (to == from)
                continue;
            const double c = q0_[to * k_ + from];
            if (c > 0.0) {
                constant_.push_back({static_cast<State>(to), static_cast<State>(from), 0, c});
                reachable_[to * k_ + from] = true;
            }
            for (std::size_t r = 0; r < k_; ++r) {
                const double l = q1_[(to * k_ + from) * k_ + r];
                if (l > 0.0) {
                    linear_.push_back({static_cast<State>(to), static_cast<State>(from),
                                       static_cast<State>(r), l});
                    reachable_[to * k_ + from] = true;
                }
            }
        }

    // q_{s's'} = -sum_{s != s'} q_{s s'}, term by term.
    for (std::size_t from = 0; from < k_; ++from) {
        double c = 0.0;
        for (std::size_t to = 0; to < k_; ++to)
            if (to != from)
                c += q0_[to * k_ + from];
        q0_[from * k_ + from] = -c;
        for (std::size_t r = 0; r < k_; ++r) {
            double l = 0.0;
            for (std::size_t to = 0; to < k_; ++to)
                if (to != from)
                    l += q1_[(to * k_ + from) * k_ + r];
            q1_[(from * k_ + from) * k_ + r] = -l;
        }
    }
    for (double v : q0_)
        q0_max_ = std::max(q0_max_, std::abs(v));
    for (double v : q1_)
        q1_max_ = std::max(q1_max_, std::abs(v));
}

State ModelSpec::state_index(std::string_view label) const
{
    const auto it = std::find(states_.begin(), states_.end(), label);
    if (it == states_.end())
        throw std::invalid_argument("model '" + name_ + "' has no state '" + std::string(label) + "'");
    return static_cast<State>(it - states_.begin());
}

double ModelSpec::rate(State to, State from, const double* phi) const noexcept
{
    double r = q0_[to * k_ + from];
    const double* row = &q1_[(to * k_ + from) * k_];
    for (std::size_t s = 0; s < k_; ++s)
        r += row[s] * phi[s];
    return r;
}

ModelKind parse_model_kind(std::string_view name)
{
    if (name == "sis" || name == "SIS")
        return ModelKind::sis;
    if (name == "sir" || name == "SIR")
        return ModelKind::sir;
    if (name == "si" || name == "SI")
        return ModelKind::si;
    if (name == "degree_process" || name == "degree")
        return ModelKind::degree_process;
    if (name == "custom")
        return ModelKind::custom;
    throw std::invalid_argument("unknown model kind '" + std::string(name) + "'");
}

namespace {

double param(const std::map<std::string, double>& params, const std::string& key, double fallback)
{
    const auto it = params.find(key);
    const double v = it == params.end() ? fallback : it->second;
    if (!(v >= 0.0) || !std::isfinite(v))
        throw std::invalid_argument("model parameter '" + key + "' must be finite and non-negative");
    return v;
}

} // namespace

ModelSpec make_model(ModelKind kind, const std::map<std::string, double>& params)
{
    using T = ModelSpec::Term;
    switch (kind) {
    case ModelKind::sis: {
        const double beta = param(params, "beta", 1.0);
        const double gamma = param(params, "gamma", 1.0);
        return ModelSpec("SIS", {"S", "I"}, {T{0, 1, 0, gamma}}, {T{1, 0, 1, beta}});
    }
    case ModelKind::sir: {
        const double beta = param(params, "beta", 1.0);
        const double gamma = param(params, "gamma", 1.0);
        return ModelSpec("SIR", {"S", "I", "R"}, {T{2, 1, 0, gamma}}, {T{1, 0, 1, beta}});
    }
    case ModelKind::si: {
        if (params.count("gamma") && params.at("gamma") != 0.0)
            throw std::invalid_argument("SI model has no recovery; gamma must be 0");
        const double beta = param(params, "beta", 1.0);
        return ModelSpec("SI", {"S", "I", "R"}, {}, {T{1, 0, 1, beta}});
    }
    case ModelKind::degree_process:
        return ModelSpec("degree_process", {"a", "b"}, {}, {T{1, 0, 0, 1.0}, T{1, 0, 1, 1.0}});
    case ModelKind::custom:
        break;
    }
    throw std::invalid_argument("custom models need explicit rate tensors (use model_from_json)");
}

std::string model_to_json(const ModelSpec& m)
{
    nlohmann::ordered_json j;
    j["name"] = m.name();
    j["states"] = m.states();
    auto q0 = nlohmann::ordered_json::array();
    for (std::size_t s = 0; s < m.num_states(); ++s) {
        auto row = nlohmann::ordered_json::array();
        for (std::size_t t = 0; t < m.num_states(); ++t)
            row.push_back(m.q0(static_cast<State>(s), static_cast<State>(t)) + 0.0); // no -0
        q0.push_back(row);
    }
    j["q0"] = q0;
    auto q1 = nlohmann::ordered_json::array();
    for (const auto& t : m.linear_terms())
        q1.push_back({t.to, t.from, t.neighbor, t.coefficient});
    j["q1"] = q1;
    return j.dump();
}

ModelSpec model_from_json(std::string_view text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("model JSON: ") + e.what());
    }
    try {
        const auto states = j.at("states").get<std::vector<std::string>>();
        const std::size_t k = states.size();
        std::vector<ModelSpec::Term> constant;
        std::vector<ModelSpec::Term> linear;
        if (j.contains("q0")) {
            const auto& q0 = j.at("q0");
            if (q0.size() != k)
                throw std::invalid_argument("model JSON: q0 must be |S| x |S|");
            for (std::size_t s = 0; s < k; ++s) {
                if (q0[s].size() != k)
                    throw std::invalid_argument("model JSON: q0 must be |S| x |S|");
                for (std::size_t t = 0; t < k; ++t) {
                    const double v = q0[s][t].get<double>();
                    if (s != t && v != 0.0)
                        constant.push_back({static_cast<State>(s), static_cast<State>(t), 0, v});
                }
            }
        }
        if (j.contains("q1"))
            for (const auto& e : j.at("q1")) {
                if (e.size() != 4)
                    throw std::invalid_argument("model JSON: q1 entries are [to, from, r, value]");
                const auto to = e[0].get<std::size_t>();
                const auto from = e[1].get<std::size_t>();
                const auto r = e[2].get<std::size_t>();
                if (to >= k || from >= k || r >= k)
                    throw std::invalid_argument("model JSON: q1 entry refers to an unknown state");
                linear.push_back({static_cast<State>(to), static_cast<State>(from), static_cast<State>(r),
                                  e[3].get<double>()});
            }
        return ModelSpec(j.value("name", std::string("custom")), states, constant, linear);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("model JSON: ") + e.what());
    }
}

} // namespace hmfa
