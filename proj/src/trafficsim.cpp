#include "adhoc/trafficsim.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>

#include "adhoc/capacity.hpp"
#include "adhoc/random.hpp"

namespace adhoc {

namespace {

struct Packet {
    NodeId src;
    NodeId dst;
};

/// Next node after u on the stored route src -> dst (walk the predecessor
/// chain down from dst until it hits u).
NodeId next_hop(const std::vector<std::vector<NodeId>>& pred, NodeId src, NodeId dst, NodeId u) {
    NodeId prev = dst;
    NodeId v = pred[static_cast<std::size_t>(src)][static_cast<std::size_t>(dst)];
    while (v != u) {
        if (v < 0) throw std::runtime_error("simulate: node off its packet route");
        prev = v;
        v = pred[static_cast<std::size_t>(src)][static_cast<std::size_t>(v)];
    }
    return prev;
}

std::vector<NodeId> participant_list(const SimConfig& cfg, int n) {
    std::vector<NodeId> parts = cfg.traffic_nodes;
    if (parts.empty()) {
        parts.resize(static_cast<std::size_t>(n));
        for (NodeId i = 0; i < n; ++i) parts[static_cast<std::size_t>(i)] = i;
        return parts;
    }
    std::sort(parts.begin(), parts.end());
    if (std::adjacent_find(parts.begin(), parts.end()) != parts.end())
        throw std::invalid_argument("simulate: duplicate traffic node");
    if (parts.front() < 0 || parts.back() >= n)
        throw std::invalid_argument("simulate: traffic node out of range");
    if (parts.size() < 2) throw std::invalid_argument("simulate: need at least two traffic nodes");
    return parts;
}

}  // namespace

SimOutcome simulate(const AdHocNetwork& net, const RouteTable& routes_in, const SimConfig& cfg) {
    if (cfg.mu < 0.0) throw std::invalid_argument("simulate: mu must be non-negative");
    if (cfg.warmup < 0 || cfg.warmup >= cfg.horizon)
        throw std::invalid_argument("simulate: need 0 <= warmup < horizon");

    const int n = net.size();
    if (routes_in.n != n) throw std::invalid_argument("simulate: route table does not match network");
    const RouteTable single =
        routes_in.mode == RouteMode::SingleRoute ? routes_in : to_single_routes(routes_in);
    const auto& pred = single.pred;

    const std::vector<NodeId> parts = participant_list(cfg, n);
    for (NodeId s : parts) {
        if (pred[static_cast<std::size_t>(s)].empty())
            throw std::invalid_argument("simulate: missing routes for sender " + std::to_string(s));
        for (NodeId t : parts)
            if (t != s && pred[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)] < 0)
                throw std::invalid_argument("simulate: missing route " + std::to_string(s) + " -> " +
                                            std::to_string(t));
    }

    // Independent sub-streams; the creation coin stream is kept separate so
    // raising mu with a fixed seed only adds packets.
    Rng create_rng(derive_seed(cfg.seed, "sim-create"));
    Rng dest_rng(derive_seed(cfg.seed, "sim-dest"));
    Rng mac_rng(derive_seed(cfg.seed, "sim-mac"));

    std::vector<std::int32_t> part_index(static_cast<std::size_t>(n), -1);
    for (std::size_t k = 0; k < parts.size(); ++k)
        part_index[static_cast<std::size_t>(parts[k])] = static_cast<std::int32_t>(k);

    std::vector<std::deque<Packet>> queues(static_cast<std::size_t>(n));
    SimOutcome out;
    out.mu = cfg.mu;
    out.horizon = cfg.horizon;
    out.warmup = cfg.warmup;
    out.queue_trajectory.resize(static_cast<std::size_t>(cfg.horizon));
    out.created_series.resize(static_cast<std::size_t>(cfg.horizon));
    out.delivered_series.resize(static_cast<std::size_t>(cfg.horizon));
    out.per_node_peak_queue.assign(static_cast<std::size_t>(n), 0);

    std::int64_t queued = 0;
    std::int64_t delivered_after_warmup = 0;
    std::vector<char> participant(static_cast<std::size_t>(n), 0);
    std::vector<char> blocked(static_cast<std::size_t>(n), 0);
    std::vector<NodeId> candidates;
    candidates.reserve(static_cast<std::size_t>(n));
    std::vector<std::pair<NodeId, NodeId>> grants;

    const auto zone_scope = [&](NodeId u, NodeId v, auto&& fn) {
        fn(u);
        fn(v);
        for (NodeId w : net.in_neighbors(u)) fn(w);
        for (NodeId w : net.in_neighbors(v)) fn(w);
    };

    for (int step = 0; step < cfg.horizon; ++step) {
        int created_now = 0;
        if (cfg.mu > 0.0) {
            for (NodeId u : parts) {
                if (!create_rng.bernoulli(cfg.mu)) continue;
                // Uniform destination, skipping the sender's own slot.
                std::size_t pick = static_cast<std::size_t>(dest_rng.below(parts.size() - 1));
                if (pick >= static_cast<std::size_t>(part_index[static_cast<std::size_t>(u)]))
                    ++pick;
                queues[static_cast<std::size_t>(u)].push_back({u, parts[pick]});
                ++queued;
                ++created_now;
            }
        }
        out.created_total += created_now;
        out.created_series[static_cast<std::size_t>(step)] = created_now;

        candidates.clear();
        for (NodeId u = 0; u < n; ++u)
            if (!queues[static_cast<std::size_t>(u)].empty()) candidates.push_back(u);
        mac_rng.shuffle(candidates);

        // A transmission blocks the in-neighborhoods of both endpoints. A
        // later candidate is granted iff its endpoints are neither engaged
        // nor inside any blocked zone, and its own zone covers no engaged
        // node. Blocked bystanders of different transmissions may overlap.
        std::fill(participant.begin(), participant.end(), 0);
        std::fill(blocked.begin(), blocked.end(), 0);
        grants.clear();
        for (NodeId u : candidates) {
            if (participant[static_cast<std::size_t>(u)] || blocked[static_cast<std::size_t>(u)])
                continue;
            const Packet& pkt = queues[static_cast<std::size_t>(u)].front();
            const NodeId v = next_hop(pred, pkt.src, pkt.dst, u);
            if (participant[static_cast<std::size_t>(v)] || blocked[static_cast<std::size_t>(v)])
                continue;
            bool clear = true;
            zone_scope(u, v, [&](NodeId w) {
                if (participant[static_cast<std::size_t>(w)]) clear = false;
            });
            if (!clear) continue;
            participant[static_cast<std::size_t>(u)] = 1;
            participant[static_cast<std::size_t>(v)] = 1;
            for (NodeId w : net.in_neighbors(u)) blocked[static_cast<std::size_t>(w)] = 1;
            for (NodeId w : net.in_neighbors(v)) blocked[static_cast<std::size_t>(w)] = 1;
            grants.emplace_back(u, v);
        }

        int delivered_now = 0;
        for (const auto& [u, v] : grants) {
            Packet pkt = queues[static_cast<std::size_t>(u)].front();
            queues[static_cast<std::size_t>(u)].pop_front();
            if (v == pkt.dst) {
                ++delivered_now;
                --queued;
            } else {
                queues[static_cast<std::size_t>(v)].push_back(pkt);
            }
        }
        out.delivered_total += delivered_now;
        out.delivered_series[static_cast<std::size_t>(step)] = delivered_now;
        if (step >= cfg.warmup) delivered_after_warmup += delivered_now;
        out.queue_trajectory[static_cast<std::size_t>(step)] = queued;

        if (step >= cfg.warmup) {
            for (NodeId u = 0; u < n; ++u) {
                const auto len = static_cast<std::int64_t>(queues[static_cast<std::size_t>(u)].size());
                auto& peak = out.per_node_peak_queue[static_cast<std::size_t>(u)];
                peak = std::max(peak, len);
            }
        }

        if (cfg.check_invariants) {
            std::int64_t total = 0;
            for (const auto& q : queues) total += static_cast<std::int64_t>(q.size());
            if (total != queued || out.created_total != out.delivered_total + queued)
                throw std::logic_error("simulate: packet conservation violated");
            // No transmission's sender or receiver may lie in the blocking
            // neighborhood of another transmission.
            for (std::size_t a = 0; a < grants.size(); ++a) {
                std::vector<char> zone_a(static_cast<std::size_t>(n), 0);
                zone_scope(grants[a].first, grants[a].second,
                           [&](NodeId w) { zone_a[static_cast<std::size_t>(w)] = 1; });
                for (std::size_t b = 0; b < grants.size(); ++b) {
                    if (a == b) continue;
                    if (zone_a[static_cast<std::size_t>(grants[b].first)] ||
                        zone_a[static_cast<std::size_t>(grants[b].second)])
                        throw std::logic_error("simulate: MAC exclusivity violated");
                }
            }
        }
    }

    out.delivered_per_step =
        static_cast<double>(delivered_after_warmup) / (cfg.horizon - cfg.warmup);
    out.verdict = classify_criticality(out);
    out.supercritical = out.verdict == Criticality::Supercritical;
    return out;
}

Criticality classify_criticality(const SimOutcome& outcome) {
    const auto& traj = outcome.queue_trajectory;
    if (traj.empty()) return Criticality::Inconclusive;

    const std::size_t half = traj.size() / 2;
    const std::size_t m = traj.size() - half;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double x = static_cast<double>(k);
        const double y = static_cast<double>(traj[half + k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = m * sxx - sx * sx;
    const double slope = denom != 0.0 ? (m * sxy - sx * sy) / denom : 0.0;

    const double q0 = static_cast<double>(traj[static_cast<std::size_t>(outcome.warmup)]);
    const double qf = static_cast<double>(traj.back());

    constexpr double slope_threshold = 0.01;  // packets per step
    if (slope > slope_threshold) {
        if (qf > 10.0 * q0) return Criticality::Supercritical;
        return Criticality::Inconclusive;  // transient burst; caller extends the horizon
    }
    return Criticality::Subcritical;
}

namespace {

Criticality probe(const AdHocNetwork& net, const RouteTable& routes, const SimConfig& base,
                  double mu, int probe_index, int max_doublings) {
    SimConfig cfg = base;
    cfg.mu = mu;
    for (int attempt = 0; attempt <= max_doublings; ++attempt) {
        cfg.seed = derive_seed(base.seed, "probe", static_cast<std::uint64_t>(probe_index) * 16 +
                                                       static_cast<std::uint64_t>(attempt));
        const SimOutcome out = simulate(net, routes, cfg);
        if (out.verdict != Criticality::Inconclusive) return out.verdict;
        cfg.horizon *= 2;
    }
    // Still growing but short of the 10x test after all extensions: treat as
    // over the edge so the bracket narrows from above.
    return Criticality::Supercritical;
}

}  // namespace

CriticalRateResult find_critical_rate(const AdHocNetwork& net, const RouteTable& routes,
                                      const SimConfig& base, double rel_tol) {
    if (rel_tol <= 0.0) throw std::invalid_argument("find_critical_rate: rel_tol must be positive");
    const int n = net.size();
    const std::vector<NodeId> parts = participant_list(base, n);
    constexpr int max_doublings = 3;

    // Analytic estimate on the same routes seeds the bracket.
    TrafficPattern traffic;
    if (!base.traffic_nodes.empty()) {
        traffic.sources = parts;
        traffic.targets = parts;
    }
    CentralityVector cv = betweenness(net, routes, traffic);
    cumulative_betweenness(net, cv);
    const double t_est = estimate_throughput(net, cv).t_e2e;
    const double mu_guess = t_est / static_cast<double>(parts.size());

    CriticalRateResult res;
    int idx = 0;

    double lo = mu_guess * 0.5;
    for (int tries = 0;; ++tries) {
        if (tries >= 16) throw BracketFailureError("find_critical_rate: no subcritical mu found");
        ++res.probes;
        if (probe(net, routes, base, lo, idx++, max_doublings) == Criticality::Subcritical) break;
        lo *= 0.5;
    }
    double hi = mu_guess;
    for (int tries = 0;; ++tries) {
        if (tries >= 16) throw BracketFailureError("find_critical_rate: no supercritical mu found");
        ++res.probes;
        if (probe(net, routes, base, hi, idx++, max_doublings) == Criticality::Supercritical) break;
        hi *= 2.0;
    }

    while ((hi - lo) / (0.5 * (hi + lo)) > rel_tol) {
        const double mid = 0.5 * (lo + hi);
        ++res.probes;
        if (probe(net, routes, base, mid, idx++, max_doublings) == Criticality::Subcritical)
            lo = mid;
        else
            hi = mid;
    }

    res.mu_lo = lo;
    res.mu_hi = hi;
    res.mu_crit = 0.5 * (lo + hi);
    res.t_e2e_sim = res.mu_crit * static_cast<double>(parts.size());
    return res;
}

}  // namespace adhoc
