#include "hmfa_cli/cli.hpp"

#include "hmfa/audit.hpp"
#include "hmfa/convergence.hpp"
#include "hmfa/csv.hpp"
#include "hmfa/experiments.hpp"
#include "hmfa/graph_io.hpp"
#include "hmfa/serialize.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hmfa::cli {

namespace {

using json = nlohmann::ordered_json;

std::string parent_dir(const std::string& path)
{
    return std::filesystem::path(path).parent_path().string();
}

void emit(std::ostream& out, const std::string& text, const std::string& path)
{
    if (path.empty() || path == "-")
        out << text;
    else
        write_text_file(path, text);
}

struct GenerateArgs {
    std::string kind;
    std::size_t n = 0;
    std::optional<double> p;
    std::optional<double> mean_degree;
    std::uint32_t d = 0;
    std::uint64_t seed = 1;
    std::string out;
};

void cmd_generate(const GenerateArgs& a, std::ostream& out, std::ostream& err)
{
    GraphSpec spec;
    spec.kind = a.kind == "random_regular" ? "regular" : a.kind;
    spec.n = a.n;
    spec.p = a.p;
    spec.mean_degree = a.mean_degree;
    spec.degree = a.d;
    if (spec.kind == "er" && spec.p.has_value() == spec.mean_degree.has_value())
        throw std::invalid_argument("generate: er needs exactly one of --p and --mean-degree");
    if (spec.kind == "regular" && a.d == 0)
        throw std::invalid_argument("generate: regular needs --d");
    if (spec.kind == "file")
        throw std::invalid_argument("generate: unknown kind 'file'");
    if (spec.kind != "er" && spec.kind != "regular")
        parse_named_kind(spec.kind);
    const GeneratedGraph gg = build_graph(spec, a.seed);
    json prov{{"kind", spec.kind}, {"n", spec.n}, {"seed", a.seed}};
    if (spec.p)
        prov["p"] = *spec.p;
    if (spec.mean_degree)
        prov["mean_degree"] = *spec.mean_degree;
    if (spec.kind == "regular")
        prov["degree"] = spec.degree;
    prov["attempts"] = gg.info.attempts;
    prov["exactly_uniform"] = gg.info.exactly_uniform;
    std::ostringstream text;
    text << "# generator: " << prov.dump() << "\n";
    write_edge_list(text, gg.graph);
    emit(out, text.str(), a.out);
    err << "generated n=" << gg.graph.size() << " edges=" << gg.graph.num_edges()
        << " attempts=" << gg.info.attempts << " exactly_uniform=" << (gg.info.exactly_uniform ? "true" : "false")
        << "\n";
}

struct DiscrepancyArgs {
    std::string graph;
    std::size_t cap = 24;
    unsigned threads = 1;
    std::vector<std::string> measures{"del_max", "del_1", "del_2"};
    bool spectral = false;
    std::string out;
};

void cmd_discrepancy(const DiscrepancyArgs& a, std::ostream& out)
{
    const Graph g = load_edge_list(a.graph);
    DiscrepancySelection which{false, false, false, false};
    for (const auto& m : a.measures) {
        if (m == "del_max")
            which.del_max = true;
        else if (m == "del_1")
            which.del_1 = true;
        else if (m == "del_2")
            which.del_2 = true;
        else if (m == "del_tilde")
            which.del_tilde = true;
        else
            throw std::invalid_argument("discrepancy: unknown measure '" + m + "'");
    }
    if (a.cap > brute_force_hard_limit)
        throw std::invalid_argument("discrepancy: --cap above the hard limit");
    DiscrepancyReport r = brute_force_discrepancies(g, which, BruteForceOptions{a.cap, a.threads});
    if (a.spectral || r.refused) {
        const SpectralReport s = spectral_report(g);
        r.spectral_bound = Measure{s.lambda_second, Method::spectral_bound, std::nullopt};
    }
    emit(out, to_json(r) + "\n", a.out);
}

struct SpectralArgs {
    std::string graph;
    std::vector<Vertex> restrict;
    std::string method = "auto";
    bool mixing = false;
    std::size_t cap = 24;
    std::string out;
};

void cmd_spectral(const SpectralArgs& a, std::ostream& out)
{
    const Graph g = load_edge_list(a.graph);
    SpectralOptions opts;
    if (a.method == "dense")
        opts.force_method = EigenMethod::dense_full;
    else if (a.method == "iterative")
        opts.force_method = EigenMethod::iterative;
    else if (a.method != "auto")
        throw std::invalid_argument("spectral: --method must be auto, dense or iterative");
    std::optional<VertexSet> restrict;
    if (!a.restrict.empty())
        restrict = VertexSet::from_indices(g.size(), a.restrict);
    const SpectralReport s = spectral_report(g, restrict, opts);
    if (!a.mixing) {
        emit(out, to_json(s) + "\n", a.out);
        return;
    }
    MixingOptions mo;
    mo.cap = a.cap;
    mo.spectral = opts;
    json j;
    j["spectrum"] = json::parse(to_json(s));
    j["mixing"] = json::parse(to_json(mixing_bound_check(g, mo)));
    emit(out, j.dump(2) + "\n", a.out);
}

struct CoreArgs {
    std::string graph;
    std::optional<double> target;
    std::uint32_t threshold = 100;
    std::string out;
};

void cmd_core(const CoreArgs& a, std::ostream& out)
{
    const Graph g = load_edge_list(a.graph);
    CoreOptions opts;
    opts.external_threshold = a.threshold;
    const CoreResult r = extract_core(g, a.target.value_or(g.mean_degree()), opts);
    emit(out, to_json(r) + "\n", a.out);
}

struct ConfigArgs {
    std::string config;
    std::optional<unsigned> threads;
    std::optional<std::string> output_dir;
    std::size_t graph_index = 0;
    std::size_t run = 0;
    std::string out;
};

ExperimentConfig load_experiment(const ConfigArgs& a)
{
    ExperimentConfig cfg = parse_experiment_config(read_text_file(a.config), parent_dir(a.config));
    if (a.threads)
        cfg.threads = *a.threads;
    if (a.output_dir)
        cfg.output_dir = *a.output_dir;
    if (cfg.threads < 1)
        throw std::invalid_argument("--threads must be >= 1");
    if (a.graph_index >= cfg.graph.seeds.size())
        throw std::invalid_argument("--graph-index out of range");
    return cfg;
}

void cmd_simulate(const ConfigArgs& a, std::ostream& out)
{
    const ExperimentConfig cfg = load_experiment(a);
    if (a.run >= cfg.replications)
        throw std::invalid_argument("simulate: --run must be below the replication count");
    const std::uint64_t gseed = cfg.graph.seeds[a.graph_index];
    const GeneratedGraph gg = build_graph(cfg.graph, gseed);
    const ModelSpec m = build_model(cfg.model);
    const StateAssignment init = initial_condition(cfg.initial, gg.graph, m, derive_seed(cfg.seed, 2 * a.graph_index + 1));
    const std::uint64_t seed = derive_seed(derive_seed(cfg.seed, 2 * a.graph_index), a.run);
    Trajectory t = simulate(gg.graph, m, init, cfg.horizon, cfg.dt, seed);
    const std::string comment = "config: " + resolved_config_json(cfg) + "\ngraph_seed: " + std::to_string(gseed) +
                                "\nrun: " + std::to_string(a.run) + "\nrun_seed: " + std::to_string(seed);
    emit(out, trajectory_csv(t, comment), a.out);
}

struct HmfaArgs {
    std::string config;
    std::string model = "sis";
    std::string model_file;
    std::optional<double> beta;
    std::optional<double> gamma;
    std::vector<double> u0;
    double horizon = 1.0;
    double dt = 0.01;
    std::string out;
};

void cmd_hmfa(const HmfaArgs& a, std::ostream& out)
{
    std::optional<ModelSpec> m;
    std::vector<double> u0 = a.u0;
    double horizon = a.horizon, dt = a.dt;
    std::string comment;
    if (!a.config.empty()) {
        const ExperimentConfig cfg = parse_experiment_config(read_text_file(a.config), parent_dir(a.config));
        const GeneratedGraph gg = build_graph(cfg.graph, cfg.graph.seeds.front());
        m = build_model(cfg.model);
        u0 = xbar(initial_condition(cfg.initial, gg.graph, *m, derive_seed(cfg.seed, 1)));
        horizon = cfg.horizon;
        dt = cfg.dt;
        comment = "config: " + resolved_config_json(cfg);
    } else {
        if (!a.model_file.empty()) {
            m = model_from_json(read_text_file(a.model_file));
        } else {
            std::map<std::string, double> params;
            if (a.beta)
                params["beta"] = *a.beta;
            if (a.gamma)
                params["gamma"] = *a.gamma;
            m = make_model(parse_model_kind(a.model), params);
        }
        if (u0.empty())
            throw std::invalid_argument("hmfa: give --u0 or --config");
        comment = "model: " + model_to_json(*m);
    }
    const OdeSolution sol = solve_hmfa(*m, u0, horizon, dt);
    std::ostringstream stats;
    stats << "\nsteps: " << sol.stats.accepted << " accepted, " << sol.stats.rejected << " rejected";
    emit(out, trajectory_csv(to_trajectory(sol), comment + stats.str()), a.out);
}

void cmd_compare(const ConfigArgs& a, std::ostream& out)
{
    const ExperimentConfig cfg = load_experiment(a);
    json summary = json::array();
    for (const auto& r : compare(cfg)) {
        const auto paths = write_comparison(cfg, r);
        summary.push_back(json{{"graph_seed", r.graph_seed},
                               {"sup_error", r.sup_error},
                               {"fluctuation_sup_median", r.fluctuation_sup.median},
                               {"budget_total", r.budget.total},
                               {"budget_holds", r.sup_error <= r.budget.total},
                               {"files", paths}});
    }
    out << summary.dump(2) << "\n";
}

void cmd_convergence(const ConfigArgs& a, std::ostream& out)
{
    ConvergenceConfig cfg = parse_convergence_config(read_text_file(a.config), parent_dir(a.config));
    if (a.threads)
        cfg.threads = *a.threads;
    if (a.output_dir)
        cfg.output_dir = *a.output_dir;
    if (cfg.threads < 1)
        throw std::invalid_argument("--threads must be >= 1");
    const ConvergenceTable t = convergence_study(cfg);
    std::filesystem::create_directories(cfg.output_dir);
    const auto stem = (std::filesystem::path(cfg.output_dir) / cfg.name).string();
    const std::string text = to_json(t, cfg);
    write_text_file(stem + "_convergence.csv", convergence_csv(t, "config: " + resolved_config_json(cfg)));
    write_text_file(stem + "_convergence.json", text + "\n");
    out << text << "\n";
}

struct AuditArgs {
    std::string graph;
    bool json_output = false;
    std::size_t cap = 24;
    AuditThresholds thresholds;
};

void cmd_audit(const AuditArgs& a, std::ostream& out)
{
    const Graph g = load_edge_list(a.graph);
    AuditOptions opts;
    opts.cap = a.cap;
    opts.thresholds = a.thresholds;
    const AuditReport r = quasirandom_audit(g, opts);
    if (a.json_output) {
        out << to_json(r) << "\n";
        return;
    }
    auto line = [&out](const char* label, const AuditItem& it) {
        out << label << ": " << (it.flagged ? "FLAGGED" : "ok") << " (value " << format_number(it.value)
            << ", threshold " << format_number(it.threshold) << ")";
        if (it.witness_delta)
            out << " witness delta " << format_number(*it.witness_delta);
        out << "\n";
    };
    out << "n: " << r.n << "\n";
    line("bipartite", r.bipartite);
    line("fragmented", r.fragmented);
    line("independent_set", r.independent_set);
    line("bounded_degree", r.bounded_degree);
    if (r.del_max)
        out << "del_max: " << format_number(r.del_max->value) << "\n";
    out << "verdict: " << (r.not_quasi_random ? "not quasi-random" : "no obstruction found") << "\n";
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Mean-field approximation of Markov processes on graphs", "hmfa"};
    app.require_subcommand(1);
    std::function<void()> action;

    GenerateArgs gen;
    auto* c_gen = app.add_subcommand("generate", "Write a generated graph as an edge list");
    c_gen->add_option("--kind", gen.kind, "er, regular, star, complete, path, cycle, perfect_matching, complete_bipartite")
        ->required();
    c_gen->add_option("--n", gen.n, "Vertex count")->required();
    c_gen->add_option("--p", gen.p, "Edge probability (er)");
    c_gen->add_option("--mean-degree", gen.mean_degree, "Target mean degree (er)");
    c_gen->add_option("--d", gen.d, "Degree (regular)");
    c_gen->add_option("--seed", gen.seed, "Random seed");
    c_gen->add_option("--out", gen.out, "Output path (default stdout)");
    c_gen->callback([&] { action = [&] { cmd_generate(gen, out, err); }; });

    std::string stats_graph, stats_out;
    auto* c_stats = app.add_subcommand("stats", "Graph statistics as JSON");
    c_stats->add_option("--graph", stats_graph, "Edge-list file")->required();
    c_stats->add_option("--out", stats_out, "Output path (default stdout)");
    c_stats->callback([&] {
        action = [&] { emit(out, to_json(graph_stats(load_edge_list(stats_graph))) + "\n", stats_out); };
    });

    DiscrepancyArgs disc;
    auto* c_disc = app.add_subcommand("discrepancy", "Exact discrepancies by exhaustive search");
    c_disc->add_option("--graph", disc.graph, "Edge-list file")->required();
    c_disc->add_option("--cap", disc.cap, "Largest n searched exhaustively");
    c_disc->add_option("--threads", disc.threads, "Worker threads")->check(CLI::PositiveNumber);
    c_disc->add_option("--measures", disc.measures, "Any of del_max del_1 del_2 del_tilde")->delimiter(',');
    c_disc->add_flag("--spectral", disc.spectral, "Also report lambda as a bound");
    c_disc->add_option("--out", disc.out, "Output path (default stdout)");
    c_disc->callback([&] { action = [&] { cmd_discrepancy(disc, out); }; });

    SpectralArgs spec;
    auto* c_spec = app.add_subcommand("spectral", "Normalized adjacency spectrum");
    c_spec->add_option("--graph", spec.graph, "Edge-list file")->required();
    c_spec->add_option("--restrict", spec.restrict, "Induced subgraph vertices")->delimiter(',');
    c_spec->add_option("--method", spec.method, "auto, dense or iterative");
    c_spec->add_flag("--mixing", spec.mixing, "Check the mixing bound");
    c_spec->add_option("--cap", spec.cap, "Largest n for the exhaustive mixing check");
    c_spec->add_option("--out", spec.out, "Output path (default stdout)");
    c_spec->callback([&] { action = [&] { cmd_spectral(spec, out); }; });

    CoreArgs core;
    auto* c_core = app.add_subcommand("core", "Core extraction");
    c_core->add_option("--graph", core.graph, "Edge-list file")->required();
    c_core->add_option("--target", core.target, "Mean degree target (default: the graph's)");
    c_core->add_option("--threshold", core.threshold, "External-neighbor removal threshold");
    c_core->add_option("--out", core.out, "Output path (default stdout)");
    c_core->callback([&] { action = [&] { cmd_core(core, out); }; });

    ConfigArgs sim;
    auto* c_sim = app.add_subcommand("simulate", "One stochastic run of an experiment as CSV");
    c_sim->add_option("--config", sim.config, "Experiment JSON")->required()->check(CLI::ExistingFile);
    c_sim->add_option("--graph-index", sim.graph_index, "Index into the graph seed list");
    c_sim->add_option("--run", sim.run, "Replication index");
    c_sim->add_option("--out", sim.out, "Output path (default stdout)");
    c_sim->callback([&] { action = [&] { cmd_simulate(sim, out); }; });

    HmfaArgs hm;
    auto* c_hm = app.add_subcommand("hmfa", "Solve the mean-field ODE as CSV");
    c_hm->add_option("--config", hm.config, "Experiment JSON (overrides the model flags)")->check(CLI::ExistingFile);
    c_hm->add_option("--model", hm.model, "sis, sir, si or degree_process");
    c_hm->add_option("--model-file", hm.model_file, "Model JSON")->check(CLI::ExistingFile);
    c_hm->add_option("--beta", hm.beta, "Infection rate");
    c_hm->add_option("--gamma", hm.gamma, "Cure or recovery rate");
    c_hm->add_option("--u0", hm.u0, "Initial fractions, one per state")->delimiter(',');
    c_hm->add_option("--horizon", hm.horizon, "Final time")->check(CLI::PositiveNumber);
    c_hm->add_option("--dt", hm.dt, "Output grid step")->check(CLI::PositiveNumber);
    c_hm->add_option("--out", hm.out, "Output path (default stdout)");
    c_hm->callback([&] { action = [&] { cmd_hmfa(hm, out); }; });

    ConfigArgs cmp;
    auto* c_cmp = app.add_subcommand("compare", "Simulation ensemble versus the mean-field ODE");
    c_cmp->add_option("--config", cmp.config, "Experiment JSON")->required()->check(CLI::ExistingFile);
    c_cmp->add_option("--threads", cmp.threads, "Worker threads");
    c_cmp->add_option("--output-dir", cmp.output_dir, "Override the output directory");
    c_cmp->callback([&] { action = [&] { cmd_compare(cmp, out); }; });

    ConfigArgs conv;
    auto* c_conv = app.add_subcommand("convergence", "Error scaling along a graph family");
    c_conv->add_option("--config", conv.config, "Convergence JSON")->required()->check(CLI::ExistingFile);
    c_conv->add_option("--threads", conv.threads, "Worker threads");
    c_conv->add_option("--output-dir", conv.output_dir, "Override the output directory");
    c_conv->callback([&] { action = [&] { cmd_convergence(conv, out); }; });

    AuditArgs aud;
    auto* c_aud = app.add_subcommand("audit", "Obstructions to quasi-randomness");
    c_aud->add_option("--graph", aud.graph, "Edge-list file")->required();
    c_aud->add_flag("--json", aud.json_output, "Print JSON");
    c_aud->add_option("--cap", aud.cap, "Largest n for exact witnesses");
    c_aud->add_option("--theta", aud.thresholds.theta, "Fragmentation threshold");
    c_aud->add_option("--alpha-ratio", aud.thresholds.independent_ratio, "Independent-set ratio threshold");
    c_aud->add_option("--mean-degree", aud.thresholds.mean_degree, "Bounded-degree threshold");
    c_aud->callback([&] { action = [&] { cmd_audit(aud, out); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }
    try {
        action();
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        err << "failure: " << e.what() << "\n";
        return exit_runtime;
    }
    return exit_ok;
}

} // namespace hmfa::cli
