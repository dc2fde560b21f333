#include "hmfa/convergence.hpp"

#include "hmfa/csv.hpp"
#include "json_io.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>
#include <stdexcept>

namespace hmfa {

using detail::json;

Family parse_family(std::string_view name)
{
    if (name == "er")
        return Family::er;
    if (name == "regular")
        return Family::regular;
    if (name == "complete")
        return Family::complete;
    if (name == "matching" || name == "perfect_matching")
        return Family::matching;
    throw std::invalid_argument("unknown family: " + std::string(name));
}

std::string_view to_string(Family f)
{
    switch (f) {
    case Family::er: return "er";
    case Family::regular: return "regular";
    case Family::complete: return "complete";
    case Family::matching: return "matching";
    }
    return "?";
}

ConvergenceConfig parse_convergence_config(std::string_view text, const std::string& base_dir)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    if (!j.is_object())
        throw std::invalid_argument("config: expected an object");
    static const std::set<std::string> allowed{"name", "family", "n", "mean_degrees", "sizes", "model",
                                               "initial", "horizon", "dt", "replications", "seeds", "seed",
                                               "threads", "discrepancy_cap", "output_dir"};
    for (const auto& [key, value] : j.items())
        if (!allowed.contains(key))
            throw std::invalid_argument("config: unknown key '" + key + "'");

    // Reuse the experiment parser for the shared parts.
    json e;
    e["name"] = j.value("name", std::string("convergence"));
    e["graph"] = json{{"kind", "complete"}, {"n", 2}};
    for (const char* key : {"model", "initial", "horizon", "dt", "replications", "seed", "threads",
                            "discrepancy_cap", "output_dir"})
        if (j.contains(key))
            e[key] = j[key];
    const ExperimentConfig base = parse_experiment_config(e.dump(), base_dir);

    ConvergenceConfig c;
    c.name = base.name;
    if (!j.contains("family"))
        throw std::invalid_argument("config: missing 'family'");
    c.family = parse_family(j.at("family").get<std::string>());
    c.model = base.model;
    c.initial = base.initial;
    c.horizon = base.horizon;
    c.dt = base.dt;
    c.replications = base.replications;
    c.seed = base.seed;
    c.threads = base.threads;
    c.discrepancy_cap = base.discrepancy_cap;
    c.output_dir = base.output_dir;
    if (j.contains("seeds"))
        c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    if (c.seeds.empty() || std::set<std::uint64_t>(c.seeds.begin(), c.seeds.end()).size() != c.seeds.size())
        throw std::invalid_argument("config: seeds must be non-empty and distinct");

    const bool by_degree = c.family == Family::er || c.family == Family::regular;
    const char* ladder_key = by_degree ? "mean_degrees" : "sizes";
    if (!j.contains(ladder_key))
        throw std::invalid_argument(std::string("config: family needs '") + ladder_key + "'");
    c.ladder = j.at(ladder_key).get<std::vector<double>>();
    if (c.ladder.empty())
        throw std::invalid_argument("config: empty ladder");
    for (std::size_t i = 0; i < c.ladder.size(); ++i) {
        if (!(c.ladder[i] > 0.0))
            throw std::invalid_argument("config: ladder entries must be positive");
        if (i > 0 && !(c.ladder[i] > c.ladder[i - 1]))
            throw std::invalid_argument("config: ladder must be ascending");
    }
    if (by_degree) {
        if (!j.contains("n"))
            throw std::invalid_argument("config: family needs 'n'");
        c.n = j.at("n").get<std::size_t>();
    }
    return c;
}

ExperimentConfig rung_config(const ConvergenceConfig& cfg, std::size_t rung)
{
    ExperimentConfig e;
    e.name = cfg.name + "_r" + std::to_string(rung);
    e.model = cfg.model;
    e.initial = cfg.initial;
    e.horizon = cfg.horizon;
    e.dt = cfg.dt;
    e.replications = cfg.replications;
    e.seed = derive_seed(cfg.seed, rung);
    e.threads = cfg.threads;
    e.discrepancy_cap = cfg.discrepancy_cap;
    e.output_dir = cfg.output_dir;
    const double x = cfg.ladder.at(rung);
    switch (cfg.family) {
    case Family::er:
        e.graph.kind = "er";
        e.graph.n = cfg.n;
        e.graph.mean_degree = x;
        e.graph.seeds = cfg.seeds;
        break;
    case Family::regular:
        e.graph.kind = "regular";
        e.graph.n = cfg.n;
        e.graph.degree = static_cast<std::uint32_t>(std::llround(x));
        e.graph.seeds = cfg.seeds;
        break;
    case Family::complete:
    case Family::matching:
        e.graph.kind = cfg.family == Family::complete ? "complete" : "perfect_matching";
        e.graph.n = static_cast<std::size_t>(std::llround(x));
        e.graph.seeds = {cfg.seeds.front()};
        break;
    }
    return e;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("loglog_slope: need at least two matching points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw std::invalid_argument("loglog_slope: entries must be positive");
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double den = m * sxx - sx * sx;
    if (den == 0.0)
        throw std::invalid_argument("loglog_slope: x values must differ");
    return (m * sxy - sx * sy) / den;
}

ConvergenceTable convergence_study(const ConvergenceConfig& cfg)
{
    ConvergenceTable t;
    t.family = cfg.family;
    for (std::size_t rung = 0; rung < cfg.ladder.size(); ++rung) {
        const ExperimentConfig e = rung_config(cfg, rung);
        const auto results = compare(e);
        ConvergenceRow row;
        row.x = cfg.ladder[rung];
        row.n = results.front().stats.n;
        row.graphs = results.size();
        std::vector<double> deg, theta, lambda, dstar, sup, run_sup, fluct;
        for (const auto& r : results) {
            deg.push_back(r.stats.mean_degree);
            theta.push_back(r.stats.theta);
            lambda.push_back(r.spectrum ? r.spectrum->lambda_second : 1.0);
            dstar.push_back(r.discrepancy.del_star.value);
            if (r.discrepancy.del_max)
                row.del_max.push_back(r.discrepancy.del_max->value);
            sup.push_back(r.sup_error);
            run_sup.insert(run_sup.end(), r.run_sup_error.begin(), r.run_sup_error.end());
            fluct.insert(fluct.end(), r.run_fluctuation.begin(), r.run_fluctuation.end());
        }
        row.mean_degree = median(deg);
        row.theta = median(theta);
        row.lambda = median(lambda);
        row.del_star = median(dstar);
        row.sup_error = median(sup);
        row.run_sup_error = median(run_sup);
        row.fluctuation = median(fluct);
        t.rows.push_back(std::move(row));
    }
    auto fit = [&](auto field) -> std::optional<double> {
        std::vector<double> xs, ys;
        for (const auto& r : t.rows) {
            xs.push_back(r.x);
            ys.push_back(field(r));
        }
        try {
            return loglog_slope(xs, ys);
        } catch (const std::invalid_argument&) {
            return std::nullopt;
        }
    };
    t.slope_sup_error = fit([](const ConvergenceRow& r) { return r.sup_error; });
    t.slope_run_sup_error = fit([](const ConvergenceRow& r) { return r.run_sup_error; });
    t.slope_fluctuation = fit([](const ConvergenceRow& r) { return r.fluctuation; });
    return t;
}

std::string resolved_config_json(const ConvergenceConfig& cfg)
{
    const json first = json::parse(resolved_config_json(rung_config(cfg, 0)));
    const bool by_degree = cfg.family == Family::er || cfg.family == Family::regular;
    json j;
    j["name"] = cfg.name;
    j["family"] = std::string(to_string(cfg.family));
    if (by_degree)
        j["n"] = cfg.n;
    j[by_degree ? "mean_degrees" : "sizes"] = cfg.ladder;
    j["model"] = first.at("model");
    j["initial"] = first.at("initial");
    j["horizon"] = cfg.horizon;
    j["dt"] = cfg.dt;
    j["replications"] = cfg.replications;
    j["seeds"] = cfg.seeds;
    j["seed"] = cfg.seed;
    j["discrepancy_cap"] = cfg.discrepancy_cap;
    json rungs = json::array();
    for (std::size_t r = 0; r < cfg.ladder.size(); ++r)
        rungs.push_back(derive_seed(cfg.seed, r));
    j["rung_seeds"] = rungs;
    return j.dump();
}

std::string convergence_csv(const ConvergenceTable& t, const std::string& comment)
{
    const bool by_degree = t.family == Family::er || t.family == Family::regular;
    CsvTable csv({by_degree ? "target_mean_degree" : "size", "n", "graphs", "mean_degree", "theta", "lambda",
                  "del_star", "del_max_min", "sup_error", "run_sup_error", "fluctuation_sup"});
    for (const auto& r : t.rows) {
        std::string dmax;
        if (!r.del_max.empty())
            dmax = format_number(*std::min_element(r.del_max.begin(), r.del_max.end()));
        csv.add_row({format_number(r.x), std::to_string(r.n), std::to_string(r.graphs), format_number(r.mean_degree),
                     format_number(r.theta), format_number(r.lambda), format_number(r.del_star), dmax,
                     format_number(r.sup_error), format_number(r.run_sup_error), format_number(r.fluctuation)});
    }
    return csv.str(comment);
}

std::string to_json(const ConvergenceTable& t, int indent)
{
    json j;
    j["family"] = std::string(to_string(t.family));
    json rows = json::array();
    for (const auto& r : t.rows) {
        json row;
        row["x"] = r.x;
        row["n"] = r.n;
        row["graphs"] = r.graphs;
        row["mean_degree"] = r.mean_degree;
        row["theta"] = r.theta;
        row["lambda"] = r.lambda;
        row["del_star"] = r.del_star;
        if (!r.del_max.empty())
            row["del_max"] = r.del_max;
        row["sup_error"] = r.sup_error;
        row["run_sup_error"] = r.run_sup_error;
        row["fluctuation_sup"] = r.fluctuation;
        rows.push_back(row);
    }
    j["rows"] = rows;
    auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
    j["slope_sup_error"] = opt(t.slope_sup_error);
    j["slope_run_sup_error"] = opt(t.slope_run_sup_error);
    j["slope_fluctuation"] = opt(t.slope_fluctuation);
    return j.dump(indent);
}

std::string to_json(const ConvergenceTable& t, const ConvergenceConfig& cfg, int indent)
{
    json j;
    j["config"] = json::parse(resolved_config_json(cfg));
    const json table = json::parse(to_json(t));
    for (const auto& [k, v] : table.items())
        j[k] = v;
    return j.dump(indent);
}

} // namespace hmfa
