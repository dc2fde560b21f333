#include "hmfa/experiments.hpp"

#include "hmfa/csv.hpp"
#include "hmfa/graph_io.hpp"
#include "hmfa/rng.hpp"
#include "json_io.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <set>
#include <stdexcept>

namespace hmfa {

using detail::json;

InitialKind parse_initial_kind(std::string_view name)
{
    if (name == "fraction_random")
        return InitialKind::fraction_random;
    if (name == "exact_set")
        return InitialKind::exact_set;
    if (name == "v_minus")
        return InitialKind::v_minus;
    if (name == "isolated_infected")
        return InitialKind::isolated_infected;
    if (name == "star_hub")
        return InitialKind::star_hub;
    throw std::invalid_argument("unknown initial-condition rule: " + std::string(name));
}

std::string_view to_string(InitialKind kind)
{
    switch (kind) {
    case InitialKind::fraction_random: return "fraction_random";
    case InitialKind::exact_set: return "exact_set";
    case InitialKind::v_minus: return "v_minus";
    case InitialKind::isolated_infected: return "isolated_infected";
    case InitialKind::star_hub: return "star_hub";
    }
    return "?";
}

namespace {

std::string_view model_kind_name(ModelKind k)
{
    switch (k) {
    case ModelKind::sis: return "sis";
    case ModelKind::sir: return "sir";
    case ModelKind::si: return "si";
    case ModelKind::degree_process: return "degree_process";
    case ModelKind::custom: return "custom";
    }
    return "?";
}

void check_keys(const json& j, std::initializer_list<std::string_view> allowed, std::string_view where)
{
    if (!j.is_object())
        throw std::invalid_argument(std::string(where) + ": expected an object");
    for (const auto& [key, value] : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw std::invalid_argument(std::string(where) + ": unknown key '" + key + "'");
    }
}

template <class T>
T get(const json& j, const char* key, std::string_view where)
{
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string(where) + "." + key + ": " + e.what());
    }
}

template <class T>
T get_or(const json& j, const char* key, T fallback, std::string_view where)
{
    return j.contains(key) ? get<T>(j, key, where) : fallback;
}

GraphSpec parse_graph(const json& j, const std::string& base_dir)
{
    check_keys(j, {"kind", "n", "p", "mean_degree", "degree", "path", "seed", "seeds"}, "graph");
    GraphSpec g;
    g.kind = get<std::string>(j, "kind", "graph");
    g.n = get_or<std::size_t>(j, "n", 0, "graph");
    if (j.contains("p"))
        g.p = get<double>(j, "p", "graph");
    if (j.contains("mean_degree"))
        g.mean_degree = get<double>(j, "mean_degree", "graph");
    g.degree = get_or<std::uint32_t>(j, "degree", 0, "graph");
    if (j.contains("path")) {
        std::filesystem::path p = get<std::string>(j, "path", "graph");
        if (p.is_relative() && !base_dir.empty())
            p = std::filesystem::path(base_dir) / p;
        g.path = p.string();
    }
    if (j.contains("seeds") && j.contains("seed"))
        throw std::invalid_argument("graph: give either 'seed' or 'seeds'");
    if (j.contains("seeds"))
        g.seeds = get<std::vector<std::uint64_t>>(j, "seeds", "graph");
    else if (j.contains("seed"))
        g.seeds = {get<std::uint64_t>(j, "seed", "graph")};

    if (g.seeds.empty())
        throw std::invalid_argument("graph: seed list is empty");
    if (std::set<std::uint64_t>(g.seeds.begin(), g.seeds.end()).size() != g.seeds.size())
        throw std::invalid_argument("graph: seeds must be distinct");
    if (g.kind == "er") {
        if (g.n < 2)
            throw std::invalid_argument("graph: er needs n >= 2");
        if (g.p.has_value() == g.mean_degree.has_value())
            throw std::invalid_argument("graph: er needs exactly one of 'p' and 'mean_degree'");
    } else if (g.kind == "regular") {
        if (g.n < 2 || g.degree == 0)
            throw std::invalid_argument("graph: regular needs n >= 2 and degree >= 1");
    } else if (g.kind == "file") {
        if (g.path.empty())
            throw std::invalid_argument("graph: file needs 'path'");
        if (!std::filesystem::exists(g.path))
            throw std::invalid_argument("graph: file not found: " + g.path);
    } else {
        parse_named_kind(g.kind);
        if (g.n < 2)
            throw std::invalid_argument("graph: " + g.kind + " needs n >= 2");
    }
    return g;
}

ModelConfig parse_model(const json& j)
{
    if (!j.is_object())
        throw std::invalid_argument("model: expected an object");
    ModelConfig m;
    m.kind = parse_model_kind(get<std::string>(j, "kind", "model"));
    if (m.kind == ModelKind::custom) {
        check_keys(j, {"kind", "spec"}, "model");
        if (!j.contains("spec"))
            throw std::invalid_argument("model: custom needs 'spec'");
        m.custom_json = j.at("spec").dump();
        model_from_json(m.custom_json);
        return m;
    }
    for (const auto& [key, value] : j.items()) {
        if (key == "kind")
            continue;
        if (key != "beta" && key != "gamma")
            throw std::invalid_argument("model: unknown key '" + key + "'");
        if (!value.is_number())
            throw std::invalid_argument("model." + key + ": expected a number");
        m.params[key] = value.get<double>();
    }
    make_model(m.kind, m.params);
    return m;
}

InitialRule parse_initial(const json& j)
{
    check_keys(j, {"rule", "fractions", "state", "fill", "vertices", "count"}, "initial");
    InitialRule r;
    r.kind = parse_initial_kind(get<std::string>(j, "rule", "initial"));
    if (j.contains("fractions"))
        r.fractions = get<std::map<std::string, double>>(j, "fractions", "initial");
    r.state = get_or<std::string>(j, "state", "I", "initial");
    r.fill = get_or<std::string>(j, "fill", "", "initial");
    if (j.contains("vertices"))
        r.vertices = get<std::vector<Vertex>>(j, "vertices", "initial");
    if (j.contains("count"))
        r.count = get<std::size_t>(j, "count", "initial");
    return r;
}

json graph_json(const GraphSpec& g)
{
    json j;
    j["kind"] = g.kind;
    if (g.kind != "file")
        j["n"] = g.n;
    if (g.p)
        j["p"] = *g.p;
    if (g.mean_degree)
        j["mean_degree"] = *g.mean_degree;
    if (g.kind == "regular")
        j["degree"] = g.degree;
    if (g.kind == "file")
        j["path"] = g.path;
    j["seeds"] = g.seeds;
    return j;
}

json model_json(const ModelConfig& m)
{
    json j;
    j["kind"] = std::string(model_kind_name(m.kind));
    if (m.kind == ModelKind::custom) {
        j["spec"] = json::parse(m.custom_json);
    } else {
        for (const auto& [k, v] : m.params)
            j[k] = v;
    }
    return j;
}

json initial_json(const InitialRule& r)
{
    json j;
    j["rule"] = std::string(to_string(r.kind));
    switch (r.kind) {
    case InitialKind::fraction_random: j["fractions"] = r.fractions; break;
    case InitialKind::exact_set:
        j["state"] = r.state;
        j["vertices"] = r.vertices;
        break;
    case InitialKind::v_minus: break;
    case InitialKind::isolated_infected:
        j["state"] = r.state;
        if (r.count)
            j["count"] = *r.count;
        break;
    case InitialKind::star_hub: j["state"] = r.state; break;
    }
    if (!r.fill.empty())
        j["fill"] = r.fill;
    return j;
}

json config_json(const ExperimentConfig& cfg)
{
    json j;
    j["name"] = cfg.name;
    j["graph"] = graph_json(cfg.graph);
    j["model"] = model_json(cfg.model);
    j["initial"] = initial_json(cfg.initial);
    j["horizon"] = cfg.horizon;
    j["dt"] = cfg.dt;
    j["replications"] = cfg.replications;
    j["seed"] = cfg.seed;
    j["discrepancy_cap"] = cfg.discrepancy_cap;
    return j;
}

} // namespace

ExperimentConfig parse_experiment_config(std::string_view text, const std::string& base_dir)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    check_keys(j,
               {"name", "graph", "model", "initial", "horizon", "dt", "replications", "seed", "threads",
                "discrepancy_cap", "output_dir"},
               "config");
    for (const char* key : {"graph", "model", "initial", "horizon", "dt"})
        if (!j.contains(key))
            throw std::invalid_argument(std::string("config: missing '") + key + "'");

    ExperimentConfig cfg;
    cfg.name = get_or<std::string>(j, "name", cfg.name, "config");
    cfg.graph = parse_graph(j.at("graph"), base_dir);
    cfg.model = parse_model(j.at("model"));
    cfg.initial = parse_initial(j.at("initial"));
    cfg.horizon = get<double>(j, "horizon", "config");
    cfg.dt = get<double>(j, "dt", "config");
    cfg.replications = get_or<std::size_t>(j, "replications", 1, "config");
    cfg.seed = get_or<std::uint64_t>(j, "seed", 1, "config");
    cfg.threads = get_or<unsigned>(j, "threads", 1, "config");
    cfg.discrepancy_cap = get_or<std::size_t>(j, "discrepancy_cap", 24, "config");
    cfg.output_dir = get_or<std::string>(j, "output_dir", ".", "config");
    if (!base_dir.empty() && std::filesystem::path(cfg.output_dir).is_relative())
        cfg.output_dir = (std::filesystem::path(base_dir) / cfg.output_dir).string();

    if (cfg.name.empty() || cfg.name.find_first_of("/\\") != std::string::npos)
        throw std::invalid_argument("config: name must be a non-empty file-name fragment");
    if (!(cfg.horizon > 0.0) || !std::isfinite(cfg.horizon))
        throw std::invalid_argument("config: horizon must be positive");
    if (!(cfg.dt > 0.0) || cfg.dt > cfg.horizon)
        throw std::invalid_argument("config: dt must be in (0, horizon]");
    if (cfg.replications < 1)
        throw std::invalid_argument("config: replications must be >= 1");
    if (cfg.threads < 1)
        throw std::invalid_argument("config: threads must be >= 1");
    if (cfg.discrepancy_cap > brute_force_hard_limit)
        throw std::invalid_argument("config: discrepancy_cap above the hard limit");
    return cfg;
}

std::string resolved_config_json(const ExperimentConfig& cfg) { return config_json(cfg).dump(); }

GeneratedGraph build_graph(const GraphSpec& spec, std::uint64_t seed)
{
    if (spec.kind == "er") {
        const double p = spec.p ? *spec.p : *spec.mean_degree / static_cast<double>(spec.n - 1);
        return erdos_renyi(spec.n, p, seed);
    }
    if (spec.kind == "regular")
        return random_regular(spec.n, spec.degree, seed);
    if (spec.kind == "file")
        return GeneratedGraph{load_edge_list(spec.path), {}};
    return GeneratedGraph{named_graph(parse_named_kind(spec.kind), spec.n), {}};
}

ModelSpec build_model(const ModelConfig& cfg)
{
    if (cfg.kind == ModelKind::custom)
        return model_from_json(cfg.custom_json);
    return make_model(cfg.kind, cfg.params);
}

StateAssignment initial_condition(const InitialRule& rule, const Graph& g, const ModelSpec& m,
                                  std::uint64_t seed)
{
    const std::size_t n = g.size();
    const std::size_t k = m.num_states();
    const State fill = rule.fill.empty() ? State{0} : m.state_index(rule.fill);
    StateAssignment xi(n, k, fill);

    switch (rule.kind) {
    case InitialKind::fraction_random: {
        std::vector<Vertex> order(n);
        std::iota(order.begin(), order.end(), Vertex{0});
        Rng rng(seed);
        for (std::size_t i = n; i > 1; --i)
            std::swap(order[i - 1], order[rng.index(i)]);
        std::size_t next = 0;
        double total = 0.0;
        for (const auto& [label, fraction] : rule.fractions) {
            const State s = m.state_index(label);
            if (!(fraction >= 0.0 && fraction <= 1.0))
                throw std::invalid_argument("initial: fractions must lie in [0, 1]");
            total += fraction;
            const auto c = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
            if (next + c > n || total > 1.0 + 1e-12)
                throw std::invalid_argument("initial: fractions sum above 1");
            for (std::size_t q = 0; q < c; ++q)
                xi.set(order[next++], s);
        }
        break;
    }
    case InitialKind::exact_set: {
        const State s = m.state_index(rule.state);
        for (Vertex v : rule.vertices) {
            if (v >= n)
                throw std::invalid_argument("initial: vertex out of range");
            xi.set(v, s);
        }
        break;
    }
    case InitialKind::v_minus: {
        const VertexSet low = v_minus(g);
        for (Vertex v = 0; v < n; ++v)
            xi.set(v, low.contains(v) ? State{0} : State{1});
        break;
    }
    case InitialKind::isolated_infected: {
        const State s = m.state_index(rule.state);
        std::vector<Vertex> isolated;
        for (Vertex v = 0; v < n; ++v)
            if (g.degree(v) == 0)
                isolated.push_back(v);
        if (isolated.empty())
            throw std::invalid_argument("initial: isolated_infected needs an isolated vertex");
        const std::size_t c = rule.count.value_or(isolated.size());
        if (c > isolated.size())
            throw std::invalid_argument("initial: fewer isolated vertices than 'count'");
        for (std::size_t q = 0; q < c; ++q)
            xi.set(isolated[q], s);
        break;
    }
    case InitialKind::star_hub: {
        bool star = g.degree(0) == n - 1;
        for (Vertex v = 1; v < n && star; ++v)
            star = g.degree(v) == 1;
        if (!star)
            throw std::invalid_argument("initial: star_hub needs a star with hub 0");
        xi.set(0, m.state_index(rule.state));
        break;
    }
    }
    return xi;
}

DiscrepancyReport analyze_discrepancy(const Graph& g, std::size_t cap, unsigned threads,
                                      std::optional<SpectralReport>* spectrum)
{
    DiscrepancyReport report;
    if (g.size() <= cap) {
        DiscrepancySelection which{};
        which.del_1 = false;
        which.del_2 = false;
        report = brute_force_discrepancies(g, which, BruteForceOptions{cap, threads});
    } else {
        report.n = g.size();
        report.del_star.value = del_star(g);
        report.del_star.method = Method::closed_form;
        std::vector<Vertex> all(g.size());
        std::iota(all.begin(), all.end(), Vertex{0});
        report.del_star.witness = Witness{v_plus(g).indices(), std::move(all)};
    }
    SpectralReport s = spectral_report(g);
    report.spectral_bound = Measure{s.lambda_second, Method::spectral_bound, std::nullopt};
    if (spectrum)
        *spectrum = std::move(s);
    return report;
}

Measure discrepancy_value(const DiscrepancyReport& report)
{
    if (report.del_max)
        return *report.del_max;
    if (!report.spectral_bound)
        throw std::invalid_argument("discrepancy_value: report carries neither del_max nor a bound");
    // del <= del_tilde + 2 del_star <= lambda + 2 del_star, and del <= 1
    const double v = std::min(1.0, report.spectral_bound->value + 2.0 * report.del_star.value);
    return Measure{v, Method::spectral_bound, std::nullopt};
}

double median(std::vector<double> values)
{
    if (values.empty())
        return 0.0;
    std::sort(values.begin(), values.end());
    const std::size_t h = values.size() / 2;
    return values.size() % 2 ? values[h] : 0.5 * (values[h - 1] + values[h]);
}

Summary summarize(std::vector<double> values)
{
    Summary s;
    if (values.empty())
        return s;
    double sum = 0.0;
    for (double v : values) {
        sum += v;
        s.max = std::max(s.max, v);
    }
    s.mean = sum / static_cast<double>(values.size());
    s.median = median(std::move(values));
    return s;
}

namespace {

double l1_row(const std::vector<double>& a, std::size_t ra, const std::vector<double>& b, std::size_t rb,
              std::size_t k)
{
    double d = 0.0;
    for (std::size_t s = 0; s < k; ++s)
        d += std::abs(a[ra * k + s] - b[rb * k + s]);
    return d;
}

} // namespace

ComparisonResult compare_on_graph(const ExperimentConfig& cfg, const Graph& g, const GenerationInfo& info,
                                  std::uint64_t graph_seed, std::size_t seed_index)
{
    const ModelSpec m = build_model(cfg.model);
    const StateAssignment init = initial_condition(cfg.initial, g, m, derive_seed(cfg.seed, 2 * seed_index + 1));

    ComparisonResult r;
    r.name = cfg.name;
    r.graph_seed = graph_seed;
    r.simulation_seed = derive_seed(cfg.seed, 2 * seed_index);
    r.generation = info;
    r.stats = graph_stats(g);

    EnsembleOptions eo;
    eo.replications = cfg.replications;
    eo.master_seed = r.simulation_seed;
    eo.threads = cfg.threads;
    const auto runs = simulate_ensemble(g, m, init, cfg.horizon, cfg.dt, eo);
    r.mean = ensemble_mean(runs);

    const auto u0 = xbar(init);
    r.ode = solve_hmfa(m, u0, cfg.horizon, cfg.dt);

    const std::size_t k = m.num_states();
    const std::size_t rows = r.mean.rows();
    r.error.resize(rows);
    for (std::size_t row = 0; row < rows; ++row) {
        r.error[row] = l1_row(r.mean.xbar, row, r.ode.u, row, k);
        r.sup_error = std::max(r.sup_error, r.error[row]);
    }
    r.run_sup_error.reserve(runs.size());
    r.run_fluctuation.reserve(runs.size());
    for (const auto& run : runs) {
        double sup = 0.0, fluct = 0.0;
        for (std::size_t row = 0; row < rows; ++row) {
            sup = std::max(sup, l1_row(run.xbar, row, r.ode.u, row, k));
            fluct = std::max(fluct, l1_row(run.xbar, row, r.mean.xbar, row, k));
        }
        r.run_sup_error.push_back(sup);
        r.run_fluctuation.push_back(fluct);
    }
    r.fluctuation_sup = summarize(r.run_fluctuation);

    r.discrepancy = analyze_discrepancy(g, cfg.discrepancy_cap, cfg.threads, &r.spectrum);
    const Measure disc = discrepancy_value(r.discrepancy);
    double gap = 0.0;
    for (std::size_t s = 0; s < k; ++s)
        gap += std::abs(u0[s] - r.ode.at(0, s));
    r.budget = error_budget(m, cfg.horizon, gap, disc.value, g.size(), r.fluctuation_sup.median);
    return r;
}

std::vector<ComparisonResult> compare(const ExperimentConfig& cfg)
{
    const bool random = cfg.graph.kind == "er" || cfg.graph.kind == "regular";
    const std::size_t count = random ? cfg.graph.seeds.size() : 1;
    std::vector<ComparisonResult> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint64_t seed = cfg.graph.seeds[i];
        GeneratedGraph gg = build_graph(cfg.graph, seed);
        out.push_back(compare_on_graph(cfg, gg.graph, gg.info, seed, i));
    }
    return out;
}

std::vector<std::string> write_comparison(const ExperimentConfig& cfg, const ComparisonResult& r)
{
    namespace fs = std::filesystem;
    fs::create_directories(cfg.output_dir);
    const std::string stem = (fs::path(cfg.output_dir) / (cfg.name + "_g" + std::to_string(r.graph_seed))).string();
    const std::string provenance = "config: " + resolved_config_json(cfg) + "\ngraph_seed: " +
                                   std::to_string(r.graph_seed) +
                                   "\nsimulation_seed: " + std::to_string(r.simulation_seed);
    std::vector<std::string> paths;

    paths.push_back(stem + "_mean.csv");
    write_text_file(paths.back(), trajectory_csv(r.mean, provenance + "\nseries: ensemble mean"));
    paths.push_back(stem + "_ode.csv");
    write_text_file(paths.back(), trajectory_csv(to_trajectory(r.ode), provenance + "\nseries: mean-field ODE"));

    CsvTable err({"t", "error_l1"});
    for (std::size_t row = 0; row < r.error.size(); ++row)
        err.add_row({format_number(r.mean.times[row]), format_number(r.error[row])});
    paths.push_back(stem + "_error.csv");
    write_text_file(paths.back(), err.str(provenance));

    CsvTable runs({"run", "seed", "sup_error", "fluctuation_sup"});
    for (std::size_t i = 0; i < r.run_sup_error.size(); ++i)
        runs.add_row({std::to_string(i), std::to_string(derive_seed(r.simulation_seed, i)),
                      format_number(r.run_sup_error[i]), format_number(r.run_fluctuation[i])});
    paths.push_back(stem + "_runs.csv");
    write_text_file(paths.back(), runs.str(provenance));

    json j;
    j["config"] = config_json(cfg);
    j["graph_seed"] = r.graph_seed;
    j["simulation_seed"] = r.simulation_seed;
    j["generation"] = detail::to_json_value(r.generation);
    j["graph_stats"] = detail::to_json_value(r.stats);
    j["discrepancy"] = detail::to_json_value(r.discrepancy);
    if (r.spectrum)
        j["spectrum"] = detail::to_json_value(*r.spectrum);
    j["sup_error"] = r.sup_error;
    j["run_sup_error"] = json{{"median", median(r.run_sup_error)},
                              {"max", *std::max_element(r.run_sup_error.begin(), r.run_sup_error.end())}};
    j["fluctuation_sup"] = json{
        {"median", r.fluctuation_sup.median}, {"mean", r.fluctuation_sup.mean}, {"max", r.fluctuation_sup.max}};
    j["budget"] = detail::to_json_value(r.budget);
    j["budget_holds"] = r.sup_error <= r.budget.total;
    j["ode_stats"] = detail::to_json_value(r.ode.stats);
    paths.push_back(stem + "_summary.json");
    write_text_file(paths.back(), j.dump(2) + "\n");
    return paths;
}

} // namespace hmfa
