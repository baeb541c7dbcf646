// Acceptance suite: every criterion prints one [PASS]/[FAIL] line with the
// measured values. Run all criteria, `--only K` for a single one, or
// `--list` to enumerate. Exit code = number of failed criteria.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "adhoc/analysis.hpp"
#include "adhoc/capacity.hpp"
#include "adhoc/parallel.hpp"
#include "adhoc/metricroute.hpp"
#include "adhoc/netio.hpp"
#include "adhoc/random.hpp"
#include "adhoc/structopt.hpp"
#include "adhoc/trafficsim.hpp"
#include "cli.hpp"

using namespace adhoc;
namespace fs = std::filesystem;

namespace {

struct Result {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v, int precision = 4) {
    std::ostringstream out;
    out.precision(precision);
    out << v;
    return out.str();
}

AdHocNetwork standard_network(int n, int k_min, std::uint64_t seed) {
    return AdHocNetwork::build_min_degree(generate_layout(n, seed), RadioParams{}, k_min);
}

AdHocNetwork make_central_hub_fixture() {
    SpatialLayout layout;
    layout.positions.push_back({0.5, 0.5});
    for (int k = 0; k < 5; ++k) {
        const double angle = 2.0 * 3.14159265358979323846 * k / 5;
        layout.positions.push_back({0.5 + 0.4 * std::cos(angle), 0.5 + 0.4 * std::sin(angle)});
    }
    std::vector<int> rungs{5, 1, 1, 1, 1, 1};
    return AdHocNetwork::from_parts(std::move(layout), RadioParams{}, 1, rungs, rungs);
}

CentralityVector hub_centrality(const AdHocNetwork& hub) {
    TrafficPattern traffic;
    for (NodeId v = 1; v < hub.size(); ++v) {
        traffic.sources.push_back(v);
        traffic.targets.push_back(v);
    }
    auto cv = betweenness(hub, hopcount_routes(hub), traffic);
    cumulative_betweenness(hub, cv);
    return cv;
}

// ---------------------------------------------------------------------------
// 1. Limiting-network identities (exact).
Result criterion_01() {
    std::ostringstream detail;
    bool pass = true;
    for (int n : {3, 10, 50}) {
        const auto net = AdHocNetwork::build_min_degree(generate_layout(n, 100 + n),
                                                        RadioParams{}, n - 1);
        CentralityVector cv = hopcount_betweenness(net);
        cumulative_betweenness(net, cv);
        const double t = estimate_throughput(net, cv).t_e2e;
        pass &= std::abs(t - 1.0) <= 1e-12;
        detail << "fc" << n << "=" << fmt(t, 15) << " ";
    }
    const auto hub = make_central_hub_fixture();
    const auto cv = hub_centrality(hub);
    const double t_hub = estimate_throughput(hub, cv).t_e2e;
    const double t_ansatz = rejected_ansatz_throughput(hub, cv).t_e2e;
    pass &= std::abs(t_hub - 0.5) <= 1e-12;
    pass &= std::abs(t_ansatz - 1.0 / 6.0) <= 1e-12;
    detail << "hub=" << fmt(t_hub, 15) << " ansatz=" << fmt(t_ansatz, 15) << " (want 1/6)";
    return {pass, detail.str()};
}

// Exhaustive all-shortest-path enumeration, independent of the library path.
struct Enumerated {
    std::vector<double> betweenness;
    double hop_total = 0.0;
};

Enumerated enumerate_reference(const AdHocNetwork& net) {
    const int n = net.size();
    Enumerated ref;
    ref.betweenness.assign(static_cast<std::size_t>(n), 0.0);
    for (NodeId s = 0; s < n; ++s) {
        std::vector<int> dist(static_cast<std::size_t>(n), -1);
        std::vector<NodeId> queue{s};
        dist[static_cast<std::size_t>(s)] = 0;
        for (std::size_t head = 0; head < queue.size(); ++head)
            for (NodeId w : net.neighbors(queue[head]))
                if (dist[static_cast<std::size_t>(w)] < 0) {
                    dist[static_cast<std::size_t>(w)] =
                        dist[static_cast<std::size_t>(queue[head])] + 1;
                    queue.push_back(w);
                }
        for (NodeId t = 0; t < n; ++t) {
            if (t == s) continue;
            if (dist[static_cast<std::size_t>(t)] < 0)
                throw std::runtime_error("reference: disconnected network");
            ref.hop_total += dist[static_cast<std::size_t>(t)];
            // Depth-first enumeration of every shortest path s -> t.
            std::vector<std::vector<NodeId>> paths;
            std::vector<NodeId> current{s};
            const std::function<void(NodeId)> expand = [&](NodeId v) {
                if (v == t) {
                    paths.push_back(current);
                    return;
                }
                for (NodeId w : net.neighbors(v)) {
                    if (dist[static_cast<std::size_t>(w)] != dist[static_cast<std::size_t>(v)] + 1)
                        continue;
                    if (dist[static_cast<std::size_t>(w)] > dist[static_cast<std::size_t>(t)])
                        continue;
                    current.push_back(w);
                    expand(w);
                    current.pop_back();
                }
            };
            expand(s);
            const double share = 1.0 / static_cast<double>(paths.size());
            for (const auto& path : paths)
                for (NodeId v : path)
                    if (v != t) ref.betweenness[static_cast<std::size_t>(v)] += share;
        }
    }
    return ref;
}

std::vector<AdHocNetwork> small_random_networks(int count) {
    std::vector<AdHocNetwork> nets;
    Rng rng(20240601);
    while (static_cast<int>(nets.size()) < count) {
        const int n = 4 + static_cast<int>(rng.below(7));  // 4..10
        const int k_min = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
        const auto layout = generate_layout(n, rng.next());
        AdHocNetwork net = AdHocNetwork::build_min_degree(layout, RadioParams{}, k_min);
        if (!is_bidirected_connected(net)) continue;
        nets.push_back(std::move(net));
    }
    return nets;
}

// 2. Brandes-style betweenness equals exhaustive enumeration on 200 networks.
Result criterion_02() {
    const auto nets = small_random_networks(200);
    double worst = 0.0;
    for (const auto& net : nets) {
        const auto cv = betweenness(net, hopcount_routes(net));
        const auto ref = enumerate_reference(net);
        for (NodeId i = 0; i < net.size(); ++i)
            worst = std::max(worst, std::abs(cv.b[static_cast<std::size_t>(i)] -
                                             ref.betweenness[static_cast<std::size_t>(i)]));
    }
    return {worst <= 1e-9, "200 networks, max |B - B_enum| = " + fmt(worst, 3)};
}

// 3. Sum rule on every test network.
Result criterion_03() {
    std::vector<AdHocNetwork> nets = small_random_networks(50);
    nets.push_back(standard_network(50, 8, 501));
    nets.push_back(standard_network(100, 8, 502));
    nets.push_back(AdHocNetwork::build_min_degree(generate_layout(10, 503), RadioParams{}, 9));
    double worst = 0.0;
    for (const auto& net : nets) {
        const auto routes = hopcount_routes(net);
        const auto cv = betweenness(net, routes);
        double b_total = 0.0;
        for (double v : cv.b) b_total += v;
        double hop_total = 0.0;
        for (NodeId s = 0; s < net.size(); ++s)
            for (NodeId t = 0; t < net.size(); ++t)
                if (s != t)
                    hop_total +=
                        routes.hop_dist[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)];
        worst = std::max(worst, std::abs(b_total - hop_total) / hop_total);
    }
    return {worst <= 1e-9, "max relative |sum B - sum hops| = " + fmt(worst, 3)};
}

// 4. Estimate vs simulation ratio band on k_min=8 ensembles.
Result criterion_04() {
    EnsembleSpec spec;
    spec.k_min = 8;
    spec.n_values = {100, 300, 500};
    spec.realizations = 10;
    spec.base_seed = 404;
    spec.with_simulation = true;
    const auto table = run_ensemble(spec);
    std::ostringstream detail;
    bool pass = true;
    for (const auto& agg : table.aggregate()) {
        if (agg.count < 10) pass = false;
        const double ratio = agg.mean_sim / agg.mean_est;
        pass &= ratio >= 0.7 && ratio <= 1.4;
        detail << "N=" << agg.n << " sim/est=" << fmt(ratio, 3) << " ";
    }
    detail << "(band [0.7, 1.4])";
    return {pass, detail.str()};
}

// 5. Baseline scaling exponent for k_min=8 estimates.
Result criterion_05() {
    EnsembleSpec spec;
    spec.k_min = 8;
    spec.n_values = {100, 200, 400, 800, 1600};
    spec.realizations = 10;
    spec.base_seed = 505;
    const auto table = run_ensemble(spec);
    std::vector<std::pair<double, double>> points;
    for (const auto& agg : table.aggregate()) points.emplace_back(agg.n, agg.mean_est);
    const auto fit = fit_scaling(points);
    const bool pass = std::abs(fit.gamma - 0.23) <= 0.06 && fit.n0 >= 0 && fit.n0 <= 80;
    return {pass, "gamma=" + fmt(fit.gamma, 3) + " (0.23±0.06), N0=" + std::to_string(fit.n0) +
                      " ([0,80]), residual=" + fmt(fit.residual_rms, 3)};
}

struct OptimizerRun {
    double initial = 0.0;
    double best = 0.0;
    bool monotone = true;
};

OptimizerRun optimizer_run(int n, std::uint64_t seed) {
    const auto net = standard_network(n, 8, seed);
    OptimizerConfig cfg;
    cfg.seed = derive_seed(seed, "acceptance-opt");
    const auto trace = optimize(net, cfg);
    OptimizerRun run;
    run.initial = trace.initial_objective;
    run.best = trace.best_objective;
    double last = trace.initial_objective;
    for (const auto& m : trace.moves) {
        if (!m.accepted) continue;
        if (m.objective_after < last) run.monotone = false;
        last = m.objective_after;
    }
    return run;
}

// 6. Optimizer efficacy at N=300 plus a timed N=100 smoke tier.
Result criterion_06() {
    using clock = std::chrono::steady_clock;

    const auto smoke_start = clock::now();
    std::vector<OptimizerRun> smoke(5);
    parallel_for(5, [&](int r) { smoke[static_cast<std::size_t>(r)] = optimizer_run(100, 600 + r); });
    const double smoke_seconds = std::chrono::duration<double>(clock::now() - smoke_start).count();
    double smoke_gain = 0.0;
    bool monotone = true;
    for (const auto& run : smoke) {
        smoke_gain += run.best / run.initial - 1.0;
        monotone &= run.monotone;
    }
    smoke_gain /= 5;

    std::vector<OptimizerRun> main_runs(5);
    parallel_for(5, [&](int r) { main_runs[static_cast<std::size_t>(r)] = optimizer_run(300, 650 + r); });
    double gain = 0.0;
    for (const auto& run : main_runs) {
        gain += run.best / run.initial - 1.0;
        monotone &= run.monotone;
    }
    gain /= 5;

    const bool pass = gain >= 0.20 && monotone && smoke_seconds < 600.0 && smoke_gain > 0.0;
    return {pass, "N=300 mean gain=" + fmt(100.0 * gain, 3) + "% (need >=20%), monotone=" +
                      (monotone ? "yes" : "no") + ", N=100 smoke gain=" +
                      fmt(100.0 * smoke_gain, 3) + "% in " + fmt(smoke_seconds, 3) + "s (<600s)"};
}

// 7. Meta-round degradation for n_p in {2, 4}.
Result criterion_07() {
    std::ostringstream detail;
    bool pass = true;
    for (int np : {2, 4}) {
        std::vector<int> degraded(5, 0);
        parallel_for(5, [&](int r) {
            const auto net = standard_network(300, 8, 700 + r);
            OptimizerConfig cfg;
            cfg.seed = derive_seed(static_cast<std::uint64_t>(700 + r), "meta");
            cfg.stop_after_first_local_max = false;
            cfg.max_meta_rounds = 5;
            cfg.n_perturb = np;
            const auto trace = optimize(net, cfg);
            degraded[static_cast<std::size_t>(r)] =
                trace.local_max_objectives.back() <= trace.local_max_objectives.front() ? 1 : 0;
        });
        int count = 0;
        for (int d : degraded) count += d;
        pass &= count >= 4;  // 80% of 5 runs
        detail << "np=" << np << ": " << count << "/5 degraded ";
    }
    detail << "(need >=4/5 each)";
    return {pass, detail.str()};
}

// 8. Link-ranking concentration on one optimized N=300 realization.
Result criterion_08() {
    const auto net = standard_network(300, 8, 808);
    OptimizerConfig cfg;
    cfg.seed = derive_seed(808, "rank");
    const auto trace = optimize(net, cfg);
    const auto ranking = rank_new_links(net, trace.best_network);
    if (ranking.entries.empty()) return {false, "optimizer added no links"};
    const auto top =
        static_cast<std::size_t>(std::ceil(0.13 * static_cast<double>(ranking.entries.size())));
    const double fraction = ranking.entries[top - 1].cumulative_fraction;
    return {fraction >= 0.70,
            std::to_string(ranking.entries.size()) + " new links, top " + std::to_string(top) +
                " (13%) recover " + fmt(100.0 * fraction, 3) + "% (need >=70%)"};
}

// 9. Greedy attempts against the baseline and the global optimizer.
Result criterion_09() {
    constexpr int kRealizations = 20;
    constexpr int kRounds = 8;
    std::vector<std::vector<double>> series1(kRealizations), series2(kRealizations),
        series3(kRealizations);
    parallel_for(kRealizations, [&](int r) {
        const auto net = standard_network(300, 8, 900 + r);
        series1[static_cast<std::size_t>(r)] = greedy_attempt_one(net, kRounds).objective;
        series2[static_cast<std::size_t>(r)] = greedy_attempt_two(net, kRounds).objective;
        series3[static_cast<std::size_t>(r)] = greedy_attempt_three(net, kRounds).objective;
    });
    const auto mean_series = [&](const std::vector<std::vector<double>>& all) {
        std::vector<double> mean(kRounds + 1, 0.0);
        for (const auto& s : all)
            for (int r = 0; r <= kRounds; ++r)
                mean[static_cast<std::size_t>(r)] += s[static_cast<std::size_t>(r)];
        for (auto& v : mean) v /= kRealizations;
        return mean;
    };
    const auto m1 = mean_series(series1);
    const auto m2 = mean_series(series2);
    const auto m3 = mean_series(series3);

    bool one_below = true;
    for (int r = 1; r <= kRounds; ++r) one_below &= m1[static_cast<std::size_t>(r)] < m1[0];

    const auto peak = [&](const std::vector<double>& m) {
        int arg = 1;
        for (int r = 2; r <= kRounds; ++r)
            if (m[static_cast<std::size_t>(r)] > m[static_cast<std::size_t>(arg)]) arg = r;
        return arg;
    };
    const int p2 = peak(m2), p3 = peak(m3);
    const double imp2 = m2[static_cast<std::size_t>(p2)] / m2[0] - 1.0;
    const double imp3 = m3[static_cast<std::size_t>(p3)] / m3[0] - 1.0;

    std::vector<OptimizerRun> opt_runs(5);
    parallel_for(5, [&](int r) { opt_runs[static_cast<std::size_t>(r)] = optimizer_run(300, 650 + r); });
    double opt_gain = 0.0;
    for (const auto& run : opt_runs) opt_gain += run.best / run.initial - 1.0;
    opt_gain /= 5;

    const bool pass = one_below && p2 >= 1 && p2 <= 6 && p3 >= 1 && p3 <= 6 && imp2 < opt_gain &&
                      imp3 < opt_gain;
    std::ostringstream detail;
    detail << "attempt1 below baseline from r1: " << (one_below ? "yes" : "no") << " (mean r0="
           << fmt(m1[0], 4) << " r1=" << fmt(m1[1], 4) << " r2=" << fmt(m1[2], 4) << " r8="
           << fmt(m1[static_cast<std::size_t>(kRounds)], 4) << "); attempt2 peak r=" << p2
           << " +" << fmt(100.0 * imp2, 3) << "%; attempt3 peak r=" << p3 << " +"
           << fmt(100.0 * imp3, 3) << "%; optimizer +" << fmt(100.0 * opt_gain, 3) << "%";
    return {pass, detail.str()};
}

// 10. Metric routing beats hop-count routing; metric scaling exponent.
Result criterion_10() {
    struct Pair {
        double hop = 0.0, metric = 0.0;
    };
    const std::vector<int> sizes{300, 500};
    std::vector<std::vector<Pair>> results(sizes.size(), std::vector<Pair>(10));
    std::vector<std::pair<int, int>> jobs;
    for (std::size_t s = 0; s < sizes.size(); ++s)
        for (int r = 0; r < 10; ++r) jobs.emplace_back(static_cast<int>(s), r);
    parallel_for(static_cast<int>(jobs.size()), [&](int j) {
        const auto [s, r] = jobs[static_cast<std::size_t>(j)];
        const int n = sizes[static_cast<std::size_t>(s)];
        const std::uint64_t seed = 1000 + static_cast<std::uint64_t>(31 * n + r);
        const auto net = standard_network(n, 8, seed);
        SimConfig sim;
        sim.seed = derive_seed(seed, "crit10");
        Pair pair;
        pair.hop = find_critical_rate(net, hopcount_single_routes(net), sim, 0.05).t_e2e_sim;
        pair.metric = find_critical_rate(net, metric_routes(net, 2), sim, 0.05).t_e2e_sim;
        results[static_cast<std::size_t>(s)][static_cast<std::size_t>(r)] = pair;
    });

    std::ostringstream detail;
    bool pass = true;
    for (std::size_t s = 0; s < sizes.size(); ++s) {
        double hop = 0.0, metric = 0.0;
        for (const auto& p : results[s]) {
            hop += p.hop;
            metric += p.metric;
        }
        hop /= 10;
        metric /= 10;
        pass &= metric > hop;
        detail << "N=" << sizes[s] << " sim metric/hop=" << fmt(metric / hop, 3) << " ";
    }

    EnsembleSpec spec;
    spec.k_min = 8;
    spec.routing = Routing::BcumMetric;
    spec.n_values = {200, 400, 800, 1600};
    spec.realizations = 10;
    spec.base_seed = 1010;
    const auto table = run_ensemble(spec);
    std::vector<std::pair<double, double>> points;
    for (const auto& agg : table.aggregate()) points.emplace_back(agg.n, agg.mean_est);
    FitOptions options;
    options.n_min = 200.0;
    options.four_n0_rule = false;
    const auto fit = fit_scaling(points, options);
    pass &= std::abs(fit.gamma - 0.42) <= 0.07;
    detail << "; metric-estimate gamma=" << fmt(fit.gamma, 3) << " (0.42±0.07), N0=" << fit.n0;
    return {pass, detail.str()};
}

// 11. Two iteration rounds suffice: rounds 2, 3, 4 agree within one SE.
Result criterion_11() {
    struct Sample {
        double t2 = 0.0, t3 = 0.0, t4 = 0.0;
    };
    std::ostringstream detail;
    bool pass = true;
    for (int n : {100, 300}) {
        constexpr int kRealizations = 10;
        std::vector<Sample> samples(kRealizations);
        parallel_for(kRealizations, [&](int r) {
            const std::uint64_t seed = 1100 + static_cast<std::uint64_t>(17 * n + r);
            const auto net = standard_network(n, 8, seed);
            MetricRoutingState state = init_state(net);
            SimConfig sim;
            sim.seed = derive_seed(seed, "crit11");
            Sample sample;
            run_iterations(state, 2);
            sample.t2 = find_critical_rate(net, to_route_table(state), sim, 0.05).t_e2e_sim;
            run_iterations(state, 1);
            sample.t3 = find_critical_rate(net, to_route_table(state), sim, 0.05).t_e2e_sim;
            run_iterations(state, 1);
            sample.t4 = find_critical_rate(net, to_route_table(state), sim, 0.05).t_e2e_sim;
            samples[static_cast<std::size_t>(r)] = sample;
        });
        const auto stats = [&](auto pick) {
            double mean = 0.0;
            for (const auto& s : samples) mean += pick(s);
            mean /= kRealizations;
            double ss = 0.0;
            for (const auto& s : samples) ss += (pick(s) - mean) * (pick(s) - mean);
            const double se = std::sqrt(ss / (kRealizations - 1)) / std::sqrt(kRealizations);
            return std::make_pair(mean, se);
        };
        const auto [m2, se2] = stats([](const Sample& s) { return s.t2; });
        const auto [m3, se3] = stats([](const Sample& s) { return s.t3; });
        const auto [m4, se4] = stats([](const Sample& s) { return s.t4; });
        const bool ok23 = std::abs(m2 - m3) <= std::sqrt(se2 * se2 + se3 * se3);
        const bool ok24 = std::abs(m2 - m4) <= std::sqrt(se2 * se2 + se4 * se4);
        const bool ok34 = std::abs(m3 - m4) <= std::sqrt(se3 * se3 + se4 * se4);
        pass &= ok23 && ok24 && ok34;
        detail << "N=" << n << " t2=" << fmt(m2, 3) << "±" << fmt(se2, 2) << " t3=" << fmt(m3, 3)
               << "±" << fmt(se3, 2) << " t4=" << fmt(m4, 3) << "±" << fmt(se4, 2) << " ";
    }
    return {pass, detail.str()};
}

// 12. Incremental betweenness bookkeeping equals from-scratch recounts.
Result criterion_12() {
    bool pass = true;
    std::int64_t passes = 0;
    const std::vector<std::tuple<int, int, std::uint64_t>> fixtures{
        {10, 2, 1}, {20, 4, 2}, {30, 8, 3}};
    for (const auto& [n, k_min, seed] : fixtures) {
        AdHocNetwork net = standard_network(n, k_min, 1200 + seed);
        MetricRoutingState state = init_state(net);
        run_iterations(state, 2, [&](const MetricRoutingState& s, NodeId) {
            const int size = s.net.size();
            std::vector<std::int64_t> full(static_cast<std::size_t>(size), 0);
            for (NodeId src = 0; src < size; ++src) {
                if (!s.routes_ready(src)) continue;
                for (NodeId t = 0; t < size; ++t) {
                    if (t == src) continue;
                    NodeId v = s.pred[static_cast<std::size_t>(src)][static_cast<std::size_t>(t)];
                    while (v != src) {
                        ++full[static_cast<std::size_t>(v)];
                        v = s.pred[static_cast<std::size_t>(src)][static_cast<std::size_t>(v)];
                    }
                    ++full[static_cast<std::size_t>(src)];
                }
            }
            for (NodeId k = 0; k < size; ++k)
                if (full[static_cast<std::size_t>(k)] != s.b[static_cast<std::size_t>(k)])
                    pass = false;
            ++passes;
        });
    }
    return {pass, "exact over " + std::to_string(passes) + " node passes on N in {10,20,30}"};
}

// 13. Mean degree of k_min=8 ensembles.
Result criterion_13() {
    std::ostringstream detail;
    bool pass = true;
    for (int n : {100, 500, 1000}) {
        double total = 0.0;
        for (int r = 0; r < 10; ++r)
            total += standard_network(n, 8, 1300 + static_cast<std::uint64_t>(13 * n + r))
                         .mean_degree();
        const double mean = total / 10;
        pass &= std::abs(mean - 9.9) <= 0.5;
        detail << "N=" << n << " <k>=" << fmt(mean, 3) << " ";
    }
    detail << "(9.9±0.5)";
    return {pass, detail.str()};
}

// 14. CLI determinism: every command replays byte-identically from its manifest.
Result criterion_14() {
    const fs::path dir = fs::temp_directory_path() / "adhocnet-acceptance-14";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const auto file = [&](const std::string& name) { return (dir / name).string(); };
    const auto slurp = [](const std::string& path) {
        std::ifstream in(path);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };
    const auto run = [](std::vector<std::string> args) {
        std::vector<const char*> argv{"adhocnet"};
        for (const auto& a : args) argv.push_back(a.c_str());
        return cli::run(static_cast<int>(argv.size()), argv.data());
    };

    bool pass = true;
    std::ostringstream detail;
    const std::vector<std::pair<std::string, std::vector<std::string>>> commands = {
        {"net.json",
         {"generate", "--n", "60", "--kmin", "8", "--seed", "14", "-o", file("net.json")}},
        {"est.json", {"estimate", "--net", file("net.json"), "-o", file("est.json")}},
        {"routes.txt",
         {"route", "--net", file("net.json"), "--routing", "bcum", "-o", file("routes.txt")}},
        {"series.csv",
         {"simulate", "--net", file("net.json"), "--mu", "0.02", "--horizon", "2000", "--warmup",
          "200", "--seed", "9", "-o", file("series.csv")}},
        {"table.csv",
         {"ensemble", "--kmin", "4", "--n", "20,30", "--realizations", "2", "--seed", "5", "-o",
          file("table.csv")}},
    };
    for (const auto& [output, args] : commands) {
        if (run(args) != 0) {
            pass = false;
            detail << output << ": command failed; ";
            continue;
        }
        const std::string before = slurp(file(output));
        if (run({"rerun", file(output + ".manifest.json")}) != 0 || slurp(file(output)) != before) {
            pass = false;
            detail << output << ": not byte-identical; ";
        } else {
            detail << output << " ok; ";
        }
    }
    fs::remove_all(dir);
    return {pass, detail.str()};
}

struct Criterion {
    int id;
    const char* title;
    Result (*fn)();
};

const Criterion kCriteria[] = {
    {1, "limiting-network identities", criterion_01},
    {2, "betweenness oracle equivalence", criterion_02},
    {3, "betweenness sum rule", criterion_03},
    {4, "estimate vs simulation agreement", criterion_04},
    {5, "baseline scaling exponent", criterion_05},
    {6, "optimizer efficacy", criterion_06},
    {7, "meta-round degradation", criterion_07},
    {8, "link ranking concentration", criterion_08},
    {9, "greedy attempt outcomes", criterion_09},
    {10, "metric-routing superiority", criterion_10},
    {11, "two-round sufficiency", criterion_11},
    {12, "incremental betweenness maintenance", criterion_12},
    {13, "mean degree statistic", criterion_13},
    {14, "CLI manifest determinism", criterion_14},
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int a = 1; a < argc; ++a) {
        if (std::strcmp(argv[a], "--list") == 0) {
            for (const auto& c : kCriteria) std::cout << c.id << ": " << c.title << '\n';
            return 0;
        }
        if (std::strcmp(argv[a], "--only") == 0 && a + 1 < argc) only = std::atoi(argv[++a]);
    }

    int failures = 0;
    for (const auto& c : kCriteria) {
        if (only != 0 && c.id != only) continue;
        Result result;
        try {
            result = c.fn();
        } catch (const std::exception& e) {
            result = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] criterion %02d %s: %s\n", result.pass ? "PASS" : "FAIL", c.id, c.title,
                    result.detail.c_str());
        std::fflush(stdout);
        if (!result.pass) ++failures;
    }
    return failures;
}
