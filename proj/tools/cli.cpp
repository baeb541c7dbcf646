#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "adhoc/analysis.hpp"
#include "adhoc/capacity.hpp"
#include "adhoc/metricroute.hpp"
#include "adhoc/netio.hpp"
#include "adhoc/random.hpp"
#include "adhoc/structopt.hpp"
#include "adhoc/trafficsim.hpp"

namespace adhoc::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void write_manifest(const std::string& command, const json& params, const fs::path& primary) {
    json doc;
    doc["tool"] = "adhocnet";
    doc["version"] = kToolVersion;
    doc["command"] = command;
    doc["params"] = params;
    fs::path path = primary;
    path += ".manifest.json";
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write manifest: " + path.string());
    out << doc.dump(2) << '\n';
}

Routing parse_routing(const std::string& name) {
    if (name == "hop") return Routing::HopCount;
    if (name == "bcum") return Routing::BcumMetric;
    throw std::invalid_argument("unknown routing metric: " + name + " (expected hop or bcum)");
}

RouteTable routes_for(const AdHocNetwork& net, const json& p) {
    const std::string routing = p.at("routing").get<std::string>();
    if (routing == "hop") return hopcount_single_routes(net);
    if (routing == "bcum") return metric_routes(net, p.at("rounds").get<int>());
    if (routing == "file")
        return read_routes_text(p.at("routes_file").get<std::string>(), net.size());
    throw std::invalid_argument("unknown routing source: " + routing);
}

CentralityVector centrality_for(const AdHocNetwork& net, Routing routing, int rounds) {
    if (routing == Routing::HopCount) {
        CentralityVector cv = hopcount_betweenness(net);
        cumulative_betweenness(net, cv);
        return cv;
    }
    MetricRoutingState state = init_state(net);
    run_iterations(state, rounds);
    return state.centrality();
}

void cmd_generate(const json& p) {
    const SpatialLayout layout = generate_layout(p.at("n").get<int>(), p.at("seed").get<std::uint64_t>());
    const RadioParams radio{p.at("alpha").get<double>(), p.at("snr").get<double>()};
    const AdHocNetwork net =
        AdHocNetwork::build_min_degree(layout, radio, p.at("k_min").get<int>());
    save_network(net, p.at("output").get<std::string>());
}

void cmd_estimate(const json& p) {
    const AdHocNetwork net = load_network(p.at("net").get<std::string>());
    const Routing routing = parse_routing(p.at("routing").get<std::string>());
    const CentralityVector cv = centrality_for(net, routing, p.at("rounds").get<int>());
    const ThroughputEstimate est = estimate_throughput(net, cv);

    json doc;
    doc["routing"] = p.at("routing");
    doc["rounds"] = p.at("rounds");
    doc["t_e2e"] = est.t_e2e;
    doc["bottleneck"] = est.bottleneck;
    const std::string output = p.at("output").get<std::string>();
    std::ofstream out(output);
    if (!out) throw std::runtime_error("cannot write: " + output);
    out << doc.dump(2) << '\n';

    if (p.contains("centrality") && !p.at("centrality").get<std::string>().empty())
        write_centrality_csv(p.at("centrality").get<std::string>(), cv);
    std::cout << format_double(est.t_e2e) << '\n';
}

void cmd_optimize(const json& p) {
    const AdHocNetwork net = load_network(p.at("net").get<std::string>());
    OptimizerConfig cfg;
    cfg.seed = p.at("seed").get<std::uint64_t>();
    cfg.n_perturb = p.at("n_perturb").get<int>();
    cfg.max_meta_rounds = p.at("meta_rounds").get<int>();
    cfg.stop_after_first_local_max = cfg.max_meta_rounds == 0;

    const OptimizationTrace trace = optimize(net, cfg);
    save_network(trace.best_network, p.at("output").get<std::string>());
    if (p.contains("trace") && !p.at("trace").get<std::string>().empty())
        write_trace_csv(p.at("trace").get<std::string>(), trace);
    if (p.contains("links") && !p.at("links").get<std::string>().empty())
        write_added_links_csv(p.at("links").get<std::string>(), trace.added_links);
    if (p.contains("rank_links") && !p.at("rank_links").get<std::string>().empty())
        write_link_ranking_csv(p.at("rank_links").get<std::string>(),
                               rank_new_links(net, trace.best_network));
    std::cout << format_double(trace.initial_objective) << " -> "
              << format_double(trace.best_objective) << '\n';
}

void cmd_greedy(const json& p) {
    const AdHocNetwork net = load_network(p.at("net").get<std::string>());
    const int attempt = p.at("attempt").get<int>();
    const int rounds = p.at("rounds").get<int>();
    GreedySeries series;
    switch (attempt) {
        case 1: series = greedy_attempt_one(net, rounds); break;
        case 2: series = greedy_attempt_two(net, rounds); break;
        case 3: series = greedy_attempt_three(net, rounds); break;
        default: throw std::invalid_argument("greedy attempt must be 1, 2 or 3");
    }
    write_greedy_series_csv(p.at("output").get<std::string>(), series);
}

void cmd_route(const json& p) {
    const AdHocNetwork net = load_network(p.at("net").get<std::string>());
    write_routes_text(p.at("output").get<std::string>(), routes_for(net, p));
}

SimConfig sim_config_from(const json& p) {
    SimConfig cfg;
    cfg.horizon = p.at("horizon").get<int>();
    cfg.warmup = p.at("warmup").get<int>();
    cfg.seed = p.at("seed").get<std::uint64_t>();
    return cfg;
}

void cmd_simulate(const json& p) {
    const AdHocNetwork net = load_network(p.at("net").get<std::string>());
    SimConfig cfg = sim_config_from(p);
    cfg.mu = p.at("mu").get<double>();
    const SimOutcome outcome = simulate(net, routes_for(net, p), cfg);
    write_sim_series_csv(p.at("output").get<std::string>(), outcome);
    if (p.contains("summary") && !p.at("summary").get<std::string>().empty())
        write_sim_summary_csv(p.at("summary").get<std::string>(), outcome);
    std::cout << "delivered_per_step " << format_double(outcome.delivered_per_step) << '\n';
}

void cmd_critical(const json& p) {
    const AdHocNetwork net = load_network(p.at("net").get<std::string>());
    const SimConfig cfg = sim_config_from(p);
    const CriticalRateResult res =
        find_critical_rate(net, routes_for(net, p), cfg, p.at("tol").get<double>());

    json doc;
    doc["mu_crit"] = res.mu_crit;
    doc["mu_lo"] = res.mu_lo;
    doc["mu_hi"] = res.mu_hi;
    doc["t_e2e_sim"] = res.t_e2e_sim;
    doc["probes"] = res.probes;
    const std::string output = p.at("output").get<std::string>();
    std::ofstream out(output);
    if (!out) throw std::runtime_error("cannot write: " + output);
    out << doc.dump(2) << '\n';
    std::cout << "t_e2e_sim " << format_double(res.t_e2e_sim) << '\n';
}

void cmd_ensemble(const json& p) {
    EnsembleSpec spec;
    spec.k_min = p.at("k_min").get<int>();
    spec.n_values = p.at("n_values").get<std::vector<int>>();
    spec.realizations = p.at("realizations").get<int>();
    spec.base_seed = p.at("seed").get<std::uint64_t>();
    spec.routing = parse_routing(p.at("routing").get<std::string>());
    spec.metric_rounds = p.at("rounds").get<int>();
    spec.optimized = p.at("optimized").get<bool>();
    spec.with_simulation = p.at("sim").get<bool>();
    spec.radio.alpha = p.at("alpha").get<double>();
    spec.radio.snr = p.at("snr").get<double>();
    spec.opt.n_perturb = p.at("n_perturb").get<int>();
    spec.sim_horizon = p.at("horizon").get<int>();
    spec.sim_warmup = p.at("warmup").get<int>();
    spec.sim_rel_tol = p.at("tol").get<double>();

    const EnsembleTable table = run_ensemble(spec);
    write_ensemble_csv(p.at("output").get<std::string>(), table);
    int failures = 0;
    for (const auto& row : table.rows)
        if (!row.ok) ++failures;
    if (failures > 0)
        std::cerr << "warning: " << failures << " ensemble member(s) failed and were excluded\n";
}

void cmd_fit(const json& p) {
    const EnsembleCsv csv = read_ensemble_csv(p.at("table").get<std::string>());
    const std::string column = p.at("column").get<std::string>();
    std::vector<std::pair<double, double>> points;
    for (const auto& agg : csv.aggregate()) {
        const double t = column == "sim" ? agg.mean_sim : agg.mean_est;
        if (!std::isnan(t)) points.emplace_back(agg.n, t);
    }
    FitOptions options;
    options.n_min = p.at("n_min").get<double>();
    options.n_max = p.at("n_max").get<double>();
    options.four_n0_rule = p.at("four_n0_rule").get<bool>();
    const ScalingFit fit = fit_scaling(points, options);
    write_fit_json(p.at("output").get<std::string>(), fit, csv.kind, column);
    std::cout << "n0 " << fit.n0 << " gamma " << format_double(fit.gamma) << " prefactor "
              << format_double(fit.prefactor) << '\n';
}

void cmd_compare(const json& p) {
    const EnsembleCsv base = read_ensemble_csv(p.at("base").get<std::string>());
    const EnsembleCsv other = read_ensemble_csv(p.at("other").get<std::string>());
    write_compare_csv(p.at("output").get<std::string>(),
                      compare_runs(base.aggregate(), other.aggregate()));
}

}  // namespace

void run_command(const std::string& name, const json& params) {
    if (name == "generate") cmd_generate(params);
    else if (name == "estimate") cmd_estimate(params);
    else if (name == "optimize") cmd_optimize(params);
    else if (name == "greedy") cmd_greedy(params);
    else if (name == "route") cmd_route(params);
    else if (name == "simulate") cmd_simulate(params);
    else if (name == "critical") cmd_critical(params);
    else if (name == "ensemble") cmd_ensemble(params);
    else if (name == "fit") cmd_fit(params);
    else if (name == "compare") cmd_compare(params);
    else throw std::invalid_argument("unknown command: " + name);
    write_manifest(name, params, params.at("output").get<std::string>());
}

int run(int argc, const char* const* argv) {
    CLI::App app{"adhocnet: throughput analysis toolkit for wireless multihop ad hoc networks"};
    app.require_subcommand(1);

    // generate
    int n = 300, k_min = 8;
    std::uint64_t seed = 1;
    double alpha = 2.0, snr = 1.0;
    std::string output;
    auto* generate = app.add_subcommand("generate", "Build a minimum-node-degree network");
    generate->add_option("--n", n, "node count")->required();
    generate->add_option("--kmin", k_min, "minimum node degree")->required();
    generate->add_option("--seed", seed, "layout seed");
    generate->add_option("--alpha", alpha, "path-loss exponent");
    generate->add_option("--snr", snr, "signal-to-noise threshold");
    generate->add_option("-o,--output", output, "network file")->required();

    // shared options
    std::string net_path, routing = "hop", routes_file, centrality, summary;
    int rounds = 2;

    auto* estimate = app.add_subcommand("estimate", "Analytic end-to-end throughput");
    estimate->add_option("--net", net_path, "network file")->required();
    estimate->add_option("--routing", routing, "hop | bcum");
    estimate->add_option("--rounds", rounds, "metric iteration rounds");
    estimate->add_option("-o,--output", output, "estimate json")->required();
    estimate->add_option("--centrality", centrality, "write centrality csv");

    int n_perturb = 1, meta_rounds = 0;
    std::string trace_path, links_path, rank_links_path;
    auto* optimizeCmd = app.add_subcommand("optimize", "Local-search topology optimization");
    optimizeCmd->add_option("--net", net_path, "network file")->required();
    optimizeCmd->add_option("--seed", seed, "search seed");
    optimizeCmd->add_option("--np", n_perturb, "nodes perturbed per meta-round");
    optimizeCmd->add_option("--meta-rounds", meta_rounds,
                            "meta-rounds after the first local maximum (0 = stop there)");
    optimizeCmd->add_option("-o,--output", output, "optimized network file")->required();
    optimizeCmd->add_option("--trace", trace_path, "write move trace csv");
    optimizeCmd->add_option("--links", links_path, "write added-links csv");
    optimizeCmd->add_option("--rank-links", rank_links_path,
                            "write greedy link ranking csv (expensive)");

    int attempt = 1;
    int greedy_rounds = 8;
    auto* greedy = app.add_subcommand("greedy", "Distributed greedy heuristics");
    greedy->add_option("--net", net_path, "network file")->required();
    greedy->add_option("--attempt", attempt, "1 | 2 | 3")->required();
    greedy->add_option("--rounds", greedy_rounds, "tagging rounds");
    greedy->add_option("-o,--output", output, "series csv")->required();

    auto* route = app.add_subcommand("route", "Export end-to-end routes");
    route->add_option("--net", net_path, "network file")->required();
    route->add_option("--routing", routing, "hop | bcum");
    route->add_option("--rounds", rounds, "metric iteration rounds");
    route->add_option("-o,--output", output, "routes text file")->required();

    double mu = 0.01, tol = 0.05;
    int horizon = 20000, warmup = 2000;
    auto* simulateCmd = app.add_subcommand("simulate", "Packet traffic simulation at fixed mu");
    simulateCmd->add_option("--net", net_path, "network file")->required();
    simulateCmd->add_option("--mu", mu, "packet creation rate per node per step")->required();
    simulateCmd->add_option("--routing", routing, "hop | bcum | file");
    simulateCmd->add_option("--routes-file", routes_file, "explicit routes (routing=file)");
    simulateCmd->add_option("--rounds", rounds, "metric iteration rounds");
    simulateCmd->add_option("--horizon", horizon, "steps");
    simulateCmd->add_option("--warmup", warmup, "steps excluded from statistics");
    simulateCmd->add_option("--seed", seed, "simulation seed");
    simulateCmd->add_option("-o,--output", output, "time series csv")->required();
    simulateCmd->add_option("--summary", summary, "write summary csv");

    auto* critical = app.add_subcommand("critical", "Bisect the critical packet creation rate");
    critical->add_option("--net", net_path, "network file")->required();
    critical->add_option("--routing", routing, "hop | bcum | file");
    critical->add_option("--routes-file", routes_file, "explicit routes (routing=file)");
    critical->add_option("--rounds", rounds, "metric iteration rounds");
    critical->add_option("--horizon", horizon, "steps");
    critical->add_option("--warmup", warmup, "steps excluded from statistics");
    critical->add_option("--seed", seed, "simulation seed");
    critical->add_option("--tol", tol, "relative bracket width");
    critical->add_option("-o,--output", output, "result json")->required();

    std::vector<int> n_values;
    int realizations = 1;
    bool optimized = false, with_sim = false;
    auto* ensemble = app.add_subcommand("ensemble", "Run a network ensemble");
    ensemble->add_option("--kmin", k_min, "minimum node degree");
    ensemble->add_option("--n", n_values, "network sizes")->required()->delimiter(',');
    ensemble->add_option("--realizations", realizations, "realizations per size");
    ensemble->add_option("--seed", seed, "base seed");
    ensemble->add_option("--routing", routing, "hop | bcum");
    ensemble->add_option("--rounds", rounds, "metric iteration rounds");
    ensemble->add_flag("--optimized", optimized, "optimize each member first");
    ensemble->add_option("--np", n_perturb, "optimizer perturbation size");
    ensemble->add_flag("--sim", with_sim, "measure simulated throughput too");
    ensemble->add_option("--horizon", horizon, "simulation steps");
    ensemble->add_option("--warmup", warmup, "simulation warmup");
    ensemble->add_option("--tol", tol, "bisection relative tolerance");
    ensemble->add_option("--alpha", alpha, "path-loss exponent");
    ensemble->add_option("--snr", snr, "signal-to-noise threshold");
    ensemble->add_option("-o,--output", output, "ensemble csv")->required();

    std::string table_path, column = "est";
    double n_min = 0.0, n_max = 1e300;
    bool plain_n0 = false;
    auto* fit = app.add_subcommand("fit", "Fit the throughput scaling law");
    fit->add_option("--table", table_path, "ensemble csv")->required();
    fit->add_option("--column", column, "est | sim");
    fit->add_option("--nmin", n_min, "fit window lower bound");
    fit->add_option("--nmax", n_max, "fit window upper bound");
    fit->add_flag("--plain-n0", plain_n0, "disable the N >= 4*N0 candidate rule");
    fit->add_option("-o,--output", output, "fit json")->required();

    std::string base_path, other_path;
    auto* compare = app.add_subcommand("compare", "Ratios between two ensemble tables");
    compare->add_option("--base", base_path, "baseline ensemble csv")->required();
    compare->add_option("--other", other_path, "comparison ensemble csv")->required();
    compare->add_option("-o,--output", output, "comparison csv")->required();

    std::string manifest_path;
    auto* rerun = app.add_subcommand("rerun", "Re-execute a command from its manifest");
    rerun->add_option("manifest", manifest_path, "manifest json")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        json p;
        if (generate->parsed()) {
            p = {{"n", n},     {"k_min", k_min}, {"seed", seed},
                 {"alpha", alpha}, {"snr", snr},     {"output", output}};
            run_command("generate", p);
        } else if (estimate->parsed()) {
            p = {{"net", net_path}, {"routing", routing}, {"rounds", rounds},
                 {"output", output}, {"centrality", centrality}};
            run_command("estimate", p);
        } else if (optimizeCmd->parsed()) {
            p = {{"net", net_path},   {"seed", seed},
                 {"n_perturb", n_perturb}, {"meta_rounds", meta_rounds},
                 {"output", output},  {"trace", trace_path},
                 {"links", links_path}, {"rank_links", rank_links_path}};
            run_command("optimize", p);
        } else if (greedy->parsed()) {
            p = {{"net", net_path}, {"attempt", attempt}, {"rounds", greedy_rounds},
                 {"output", output}};
            run_command("greedy", p);
        } else if (route->parsed()) {
            p = {{"net", net_path}, {"routing", routing}, {"rounds", rounds},
                 {"routes_file", routes_file}, {"output", output}};
            run_command("route", p);
        } else if (simulateCmd->parsed()) {
            p = {{"net", net_path}, {"mu", mu},           {"routing", routing},
                 {"routes_file", routes_file}, {"rounds", rounds},   {"horizon", horizon},
                 {"warmup", warmup}, {"seed", seed},       {"output", output},
                 {"summary", summary}};
            run_command("simulate", p);
        } else if (critical->parsed()) {
            p = {{"net", net_path}, {"routing", routing}, {"routes_file", routes_file},
                 {"rounds", rounds}, {"horizon", horizon}, {"warmup", warmup},
                 {"seed", seed},     {"tol", tol},         {"output", output}};
            run_command("critical", p);
        } else if (ensemble->parsed()) {
            p = {{"k_min", k_min},   {"n_values", n_values}, {"realizations", realizations},
                 {"seed", seed},     {"routing", routing},   {"rounds", rounds},
                 {"optimized", optimized}, {"n_perturb", n_perturb}, {"sim", with_sim},
                 {"horizon", horizon}, {"warmup", warmup},   {"tol", tol},
                 {"alpha", alpha},   {"snr", snr},           {"output", output}};
            run_command("ensemble", p);
        } else if (fit->parsed()) {
            p = {{"table", table_path}, {"column", column}, {"n_min", n_min},
                 {"n_max", n_max},      {"four_n0_rule", !plain_n0}, {"output", output}};
            run_command("fit", p);
        } else if (compare->parsed()) {
            p = {{"base", base_path}, {"other", other_path}, {"output", output}};
            run_command("compare", p);
        } else if (rerun->parsed()) {
            std::ifstream in(manifest_path);
            if (!in) throw std::runtime_error("cannot read manifest: " + manifest_path);
            json doc;
            in >> doc;
            run_command(doc.at("command").get<std::string>(), doc.at("params"));
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace adhoc::cli
