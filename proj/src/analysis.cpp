#include "adhoc/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>

#include "adhoc/metricroute.hpp"
#include "adhoc/parallel.hpp"
#include "adhoc/random.hpp"

namespace adhoc {

namespace {

EnsembleRow run_member(const EnsembleSpec& spec, int n, int realization) {
    EnsembleRow row;
    row.n = n;
    row.realization = realization;
    const std::uint64_t member_seed =
        derive_seed(derive_seed(spec.base_seed, "n", static_cast<std::uint64_t>(n)), "realization",
                    static_cast<std::uint64_t>(realization));
    row.seed = member_seed;
    row.t_sim = std::numeric_limits<double>::quiet_NaN();
    try {
        const SpatialLayout layout = generate_layout(n, derive_seed(member_seed, "layout"));
        AdHocNetwork net = AdHocNetwork::build_min_degree(layout, spec.radio, spec.k_min);
        if (spec.optimized) {
            OptimizerConfig cfg = spec.opt;
            cfg.seed = derive_seed(member_seed, "optimizer");
            net = optimize(net, cfg).best_network;
        }

        RouteTable routes;
        if (spec.routing == Routing::HopCount) {
            row.t_est = hopcount_throughput(net);
            if (spec.with_simulation) routes = hopcount_single_routes(net);
        } else {
            MetricRoutingState state = init_state(net);
            run_iterations(state, spec.metric_rounds);
            CentralityVector cv = state.centrality();
            row.t_est = estimate_throughput(net, cv).t_e2e;
            if (spec.with_simulation) routes = to_route_table(state);
        }

        if (spec.with_simulation) {
            SimConfig sim;
            sim.horizon = spec.sim_horizon;
            sim.warmup = spec.sim_warmup;
            sim.seed = derive_seed(member_seed, "simulator");
            row.t_sim = find_critical_rate(net, routes, sim, spec.sim_rel_tol).t_e2e_sim;
        }
    } catch (const std::exception& e) {
        row.ok = false;
        row.error = e.what();
    }
    return row;
}

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
    int count = 0;
};

MeanSe mean_se(const std::vector<double>& xs) {
    MeanSe r;
    r.count = static_cast<int>(xs.size());
    if (xs.empty()) return r;
    double sum = 0.0;
    for (double x : xs) sum += x;
    r.mean = sum / r.count;
    if (r.count > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - r.mean) * (x - r.mean);
        r.se = std::sqrt(ss / (r.count - 1)) / std::sqrt(static_cast<double>(r.count));
    }
    return r;
}

}  // namespace

EnsembleTable run_ensemble(const EnsembleSpec& spec) {
    if (spec.realizations < 1) throw std::invalid_argument("run_ensemble: realizations must be >= 1");
    if (spec.n_values.empty()) throw std::invalid_argument("run_ensemble: no network sizes given");
    for (std::size_t k = 1; k < spec.n_values.size(); ++k)
        if (spec.n_values[k] <= spec.n_values[k - 1])
            throw std::invalid_argument("run_ensemble: N values must be strictly increasing");

    EnsembleTable table;
    table.spec = spec;
    const int jobs = static_cast<int>(spec.n_values.size()) * spec.realizations;
    table.rows.resize(static_cast<std::size_t>(jobs));
    parallel_for(jobs, [&](int j) {
        const int n = spec.n_values[static_cast<std::size_t>(j) / spec.realizations];
        const int r = j % spec.realizations;
        table.rows[static_cast<std::size_t>(j)] = run_member(spec, n, r);
    });
    return table;
}

std::vector<EnsembleAggregate> aggregate_rows(const std::vector<EnsembleRow>& rows) {
    std::map<int, std::pair<std::vector<double>, std::vector<double>>> by_n;
    for (const auto& row : rows) {
        if (!row.ok) continue;
        auto& bucket = by_n[row.n];
        bucket.first.push_back(row.t_est);
        if (!std::isnan(row.t_sim)) bucket.second.push_back(row.t_sim);
    }
    std::vector<EnsembleAggregate> out;
    for (const auto& [n, bucket] : by_n) {
        EnsembleAggregate agg;
        agg.n = n;
        const MeanSe est = mean_se(bucket.first);
        agg.count = est.count;
        agg.mean_est = est.mean;
        agg.se_est = est.se;
        const MeanSe sim = mean_se(bucket.second);
        agg.mean_sim = sim.count > 0 ? sim.mean : std::numeric_limits<double>::quiet_NaN();
        agg.se_sim = sim.count > 0 ? sim.se : std::numeric_limits<double>::quiet_NaN();
        out.push_back(agg);
    }
    return out;
}

std::vector<EnsembleAggregate> EnsembleTable::aggregate() const { return aggregate_rows(rows); }

std::string EnsembleTable::kind_label() const {
    std::string label = "kmin" + std::to_string(spec.k_min);
    if (spec.optimized) label += "-opt";
    label += spec.routing == Routing::HopCount ? "-hop" : "-bcum";
    return label;
}

ScalingFit fit_scaling(std::span<const std::pair<double, double>> points,
                       const FitOptions& options) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& [n, t] : points) {
        if (n < options.n_min || n > options.n_max) continue;
        if (!(t > 0.0)) throw std::invalid_argument("fit_scaling: non-positive throughput value");
        pts.emplace_back(n, t);
    }
    if (pts.size() < 4) throw std::invalid_argument("fit_scaling: need at least 4 points in window");
    std::sort(pts.begin(), pts.end());
    const int n0_max = static_cast<int>(pts.front().first) - 1;

    ScalingFit best;
    double best_rms = std::numeric_limits<double>::infinity();
    for (int n0 = 0; n0 <= n0_max; ++n0) {
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        double lo = 0.0, hi = 0.0;
        int m = 0;
        for (const auto& [n, t] : pts) {
            if (n <= n0) continue;
            if (options.four_n0_rule && n < 4.0 * n0) continue;
            const double x = std::log(n - n0);
            const double y = std::log(t);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            if (m == 0) lo = n;
            hi = n;
            ++m;
        }
        if (m < 4) continue;
        const double denom = m * sxx - sx * sx;
        if (denom == 0.0) continue;
        const double gamma = (m * sxy - sx * sy) / denom;
        const double intercept = (sy - gamma * sx) / m;

        double ssr = 0.0;
        for (const auto& [n, t] : pts) {
            if (n <= n0) continue;
            if (options.four_n0_rule && n < 4.0 * n0) continue;
            const double r = std::log(t) - (intercept + gamma * std::log(n - n0));
            ssr += r * r;
        }
        const double rms = std::sqrt(ssr / m);
        if (rms < best_rms) {
            best_rms = rms;
            best.n0 = n0;
            best.gamma = gamma;
            best.prefactor = std::exp(intercept);
            best.residual_rms = rms;
            best.points_used = m;
            best.window_min = lo;
            best.window_max = hi;
        }
    }
    if (!std::isfinite(best_rms))
        throw std::invalid_argument("fit_scaling: no candidate offset leaves enough points");
    return best;
}

std::vector<ComparisonRow> compare_runs(const std::vector<EnsembleAggregate>& agg_a,
                                        const std::vector<EnsembleAggregate>& agg_b) {
    std::map<int, EnsembleAggregate> by_n;
    for (const auto& a : agg_a) by_n[a.n] = a;

    std::vector<ComparisonRow> out;
    for (const auto& b : agg_b) {
        const auto it = by_n.find(b.n);
        if (it == by_n.end()) continue;
        const auto& a = it->second;
        ComparisonRow row;
        row.n = b.n;
        row.ratio_est = b.mean_est / a.mean_est;
        row.se_ratio_est = std::abs(row.ratio_est) *
                           std::sqrt(std::pow(a.se_est / a.mean_est, 2.0) +
                                     std::pow(b.se_est / b.mean_est, 2.0));
        if (!std::isnan(a.mean_sim) && !std::isnan(b.mean_sim)) {
            row.ratio_sim = b.mean_sim / a.mean_sim;
            row.se_ratio_sim = std::abs(row.ratio_sim) *
                               std::sqrt(std::pow(a.se_sim / a.mean_sim, 2.0) +
                                         std::pow(b.se_sim / b.mean_sim, 2.0));
        } else {
            row.ratio_sim = std::numeric_limits<double>::quiet_NaN();
            row.se_ratio_sim = std::numeric_limits<double>::quiet_NaN();
        }
        out.push_back(row);
    }
    if (out.empty()) throw std::invalid_argument("compare_runs: the N grids do not intersect");
    return out;
}

std::vector<ComparisonRow> compare_runs(const EnsembleTable& base, const EnsembleTable& other) {
    return compare_runs(base.aggregate(), other.aggregate());
}

}  // namespace adhoc
