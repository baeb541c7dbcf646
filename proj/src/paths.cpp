#include "adhoc/paths.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace adhoc {

namespace {

struct BfsScratch {
    std::vector<std::int32_t> dist;
    std::vector<double> sigma;
    std::vector<NodeId> order;  // nodes in non-decreasing distance
};

void bfs_from(const AdHocNetwork& net, NodeId s, BfsScratch& sc) {
    const int n = net.size();
    sc.dist.assign(static_cast<std::size_t>(n), -1);
    sc.sigma.assign(static_cast<std::size_t>(n), 0.0);
    sc.order.clear();
    sc.dist[static_cast<std::size_t>(s)] = 0;
    sc.sigma[static_cast<std::size_t>(s)] = 1.0;
    sc.order.push_back(s);
    for (std::size_t head = 0; head < sc.order.size(); ++head) {
        const NodeId v = sc.order[head];
        const std::int32_t dv = sc.dist[static_cast<std::size_t>(v)];
        for (NodeId w : net.neighbors(v)) {
            if (sc.dist[static_cast<std::size_t>(w)] < 0) {
                sc.dist[static_cast<std::size_t>(w)] = dv + 1;
                sc.order.push_back(w);
            }
            if (sc.dist[static_cast<std::size_t>(w)] == dv + 1)
                sc.sigma[static_cast<std::size_t>(w)] += sc.sigma[static_cast<std::size_t>(v)];
        }
    }
    if (static_cast<int>(sc.order.size()) != n) {
        for (NodeId v = 0; v < n; ++v)
            if (sc.dist[static_cast<std::size_t>(v)] < 0) throw UnreachablePairError(s, v);
    }
}

std::vector<char> membership(const std::vector<NodeId>& subset, int n) {
    std::vector<char> mark;
    if (subset.empty()) {
        mark.assign(static_cast<std::size_t>(n), 1);
    } else {
        mark.assign(static_cast<std::size_t>(n), 0);
        for (NodeId v : subset) {
            if (v < 0 || v >= n) throw std::invalid_argument("traffic pattern: node out of range");
            mark[static_cast<std::size_t>(v)] = 1;
        }
    }
    return mark;
}

}  // namespace

RouteTable hopcount_routes(const AdHocNetwork& net) {
    const int n = net.size();
    RouteTable table;
    table.mode = RouteMode::AllShortestDag;
    table.n = n;
    table.hop_dist.resize(static_cast<std::size_t>(n));
    table.path_count.resize(static_cast<std::size_t>(n));
    table.preds.resize(static_cast<std::size_t>(n));

    BfsScratch sc;
    for (NodeId s = 0; s < n; ++s) {
        bfs_from(net, s, sc);
        auto& preds = table.preds[static_cast<std::size_t>(s)];
        preds.assign(static_cast<std::size_t>(n), {});
        for (NodeId v : sc.order) {
            const std::int32_t dv = sc.dist[static_cast<std::size_t>(v)];
            for (NodeId w : net.neighbors(v))
                if (sc.dist[static_cast<std::size_t>(w)] == dv + 1)
                    preds[static_cast<std::size_t>(w)].push_back(v);
        }
        table.hop_dist[static_cast<std::size_t>(s)] = sc.dist;
        table.path_count[static_cast<std::size_t>(s)] = sc.sigma;
    }
    return table;
}

RouteTable hopcount_single_routes(const AdHocNetwork& net) {
    const int n = net.size();
    RouteTable table;
    table.mode = RouteMode::SingleRoute;
    table.n = n;
    table.pred.resize(static_cast<std::size_t>(n));
    table.metric_dist.resize(static_cast<std::size_t>(n));

    BfsScratch sc;
    for (NodeId s = 0; s < n; ++s) {
        bfs_from(net, s, sc);
        auto& pred = table.pred[static_cast<std::size_t>(s)];
        pred.assign(static_cast<std::size_t>(n), -1);
        pred[static_cast<std::size_t>(s)] = s;
        for (NodeId v : sc.order) {
            const std::int32_t dv = sc.dist[static_cast<std::size_t>(v)];
            for (NodeId w : net.neighbors(v)) {
                if (sc.dist[static_cast<std::size_t>(w)] != dv + 1) continue;
                NodeId& p = pred[static_cast<std::size_t>(w)];
                if (p < 0 || v < p) p = v;
            }
        }
        auto& dist = table.metric_dist[static_cast<std::size_t>(s)];
        dist.assign(static_cast<std::size_t>(n), 0.0);
        for (NodeId v = 0; v < n; ++v)
            dist[static_cast<std::size_t>(v)] = sc.dist[static_cast<std::size_t>(v)];
    }
    return table;
}

RouteTable to_single_routes(const RouteTable& dag) {
    if (dag.mode == RouteMode::SingleRoute) return dag;
    const int n = dag.n;
    RouteTable table;
    table.mode = RouteMode::SingleRoute;
    table.n = n;
    table.pred.resize(static_cast<std::size_t>(n));
    table.metric_dist.resize(static_cast<std::size_t>(n));
    for (NodeId s = 0; s < n; ++s) {
        auto& pred = table.pred[static_cast<std::size_t>(s)];
        pred.assign(static_cast<std::size_t>(n), -1);
        pred[static_cast<std::size_t>(s)] = s;
        for (NodeId v = 0; v < n; ++v) {
            const auto& ps = dag.preds[static_cast<std::size_t>(s)][static_cast<std::size_t>(v)];
            if (!ps.empty()) pred[static_cast<std::size_t>(v)] = *std::min_element(ps.begin(), ps.end());
        }
        auto& dist = table.metric_dist[static_cast<std::size_t>(s)];
        dist.assign(static_cast<std::size_t>(n), 0.0);
        for (NodeId v = 0; v < n; ++v)
            dist[static_cast<std::size_t>(v)] =
                dag.hop_dist[static_cast<std::size_t>(s)][static_cast<std::size_t>(v)];
    }
    return table;
}

std::vector<NodeId> extract_route(const RouteTable& table, NodeId s, NodeId t) {
    std::vector<NodeId> route{t};
    NodeId v = t;
    if (table.mode == RouteMode::AllShortestDag) {
        // Walk the DAG with the deterministic tie-break, without
        // materializing the whole single-route table.
        while (v != s) {
            const auto& ps = table.preds[static_cast<std::size_t>(s)][static_cast<std::size_t>(v)];
            if (ps.empty()) throw UnreachablePairError(s, t);
            v = *std::min_element(ps.begin(), ps.end());
            route.push_back(v);
        }
    } else {
        int guard = table.n + 1;
        while (v != s) {
            v = table.pred[static_cast<std::size_t>(s)][static_cast<std::size_t>(v)];
            if (v < 0 || --guard < 0) throw UnreachablePairError(s, t);
            route.push_back(v);
        }
    }
    std::reverse(route.begin(), route.end());
    return route;
}

namespace {

CentralityVector betweenness_dag(const AdHocNetwork& net, const RouteTable& routes,
                                 const TrafficPattern& traffic) {
    const int n = net.size();
    const auto src_mark = membership(traffic.sources, n);
    const auto tgt_mark = membership(traffic.targets, n);
    std::int64_t n_targets = 0;
    for (NodeId v = 0; v < n; ++v) n_targets += tgt_mark[static_cast<std::size_t>(v)];

    CentralityVector cv;
    cv.b.assign(static_cast<std::size_t>(n), 0.0);
    cv.pair_count = 0;

    std::vector<double> delta(static_cast<std::size_t>(n));
    std::vector<NodeId> order(static_cast<std::size_t>(n));
    for (NodeId s = 0; s < n; ++s) {
        if (!src_mark[static_cast<std::size_t>(s)]) continue;
        const auto& dist = routes.hop_dist[static_cast<std::size_t>(s)];
        const auto& sigma = routes.path_count[static_cast<std::size_t>(s)];
        const auto& preds = routes.preds[static_cast<std::size_t>(s)];

        for (NodeId v = 0; v < n; ++v) order[static_cast<std::size_t>(v)] = v;
        std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
            return dist[static_cast<std::size_t>(a)] > dist[static_cast<std::size_t>(b)];
        });

        // Brandes-style dependency accumulation restricted to target pairs.
        std::fill(delta.begin(), delta.end(), 0.0);
        for (NodeId w : order) {
            const double coef =
                (tgt_mark[static_cast<std::size_t>(w)] && w != s ? 1.0 : 0.0) +
                delta[static_cast<std::size_t>(w)];
            if (coef == 0.0) continue;
            const double scale = coef / sigma[static_cast<std::size_t>(w)];
            for (NodeId v : preds[static_cast<std::size_t>(w)])
                delta[static_cast<std::size_t>(v)] += sigma[static_cast<std::size_t>(v)] * scale;
        }
        for (NodeId v = 0; v < n; ++v)
            if (v != s) cv.b[static_cast<std::size_t>(v)] += delta[static_cast<std::size_t>(v)];

        // The initial sender is included in the count of each of its routes.
        const std::int64_t own = n_targets - (tgt_mark[static_cast<std::size_t>(s)] ? 1 : 0);
        cv.b[static_cast<std::size_t>(s)] += static_cast<double>(own);
        cv.pair_count += own;
    }
    return cv;
}

CentralityVector betweenness_single(const AdHocNetwork& net, const RouteTable& routes,
                                    const TrafficPattern& traffic) {
    const int n = net.size();
    const auto src_mark = membership(traffic.sources, n);
    const auto tgt_mark = membership(traffic.targets, n);

    CentralityVector cv;
    cv.b.assign(static_cast<std::size_t>(n), 0.0);
    cv.pair_count = 0;

    for (NodeId s = 0; s < n; ++s) {
        if (!src_mark[static_cast<std::size_t>(s)]) continue;
        const auto& pred = routes.pred[static_cast<std::size_t>(s)];
        for (NodeId t = 0; t < n; ++t) {
            if (t == s || !tgt_mark[static_cast<std::size_t>(t)]) continue;
            NodeId v = pred[static_cast<std::size_t>(t)];
            if (v < 0) throw UnreachablePairError(s, t);
            // Count every forwarding node: intermediates plus the sender,
            // the recipient stays excluded.
            while (v != s) {
                cv.b[static_cast<std::size_t>(v)] += 1.0;
                v = pred[static_cast<std::size_t>(v)];
            }
            cv.b[static_cast<std::size_t>(s)] += 1.0;
            ++cv.pair_count;
        }
    }
    return cv;
}

}  // namespace

CentralityVector betweenness(const AdHocNetwork& net, const RouteTable& routes,
                             const TrafficPattern& traffic) {
    return routes.mode == RouteMode::AllShortestDag ? betweenness_dag(net, routes, traffic)
                                                    : betweenness_single(net, routes, traffic);
}

CentralityVector betweenness(const AdHocNetwork& net, const RouteTable& routes) {
    return betweenness(net, routes, TrafficPattern{});
}

CentralityVector hopcount_betweenness(const AdHocNetwork& net) {
    const int n = net.size();
    CentralityVector cv;
    cv.b.assign(static_cast<std::size_t>(n), 0.0);
    cv.pair_count = static_cast<std::int64_t>(n) * (n - 1);

    BfsScratch sc;
    std::vector<double> delta(static_cast<std::size_t>(n));
    for (NodeId s = 0; s < n; ++s) {
        bfs_from(net, s, sc);
        std::fill(delta.begin(), delta.end(), 0.0);
        for (std::size_t idx = sc.order.size(); idx-- > 1;) {
            const NodeId w = sc.order[idx];
            const std::int32_t dw = sc.dist[static_cast<std::size_t>(w)];
            const double scale =
                (1.0 + delta[static_cast<std::size_t>(w)]) / sc.sigma[static_cast<std::size_t>(w)];
            for (NodeId v : net.neighbors(w))
                if (sc.dist[static_cast<std::size_t>(v)] == dw - 1)
                    delta[static_cast<std::size_t>(v)] +=
                        sc.sigma[static_cast<std::size_t>(v)] * scale;
        }
        for (NodeId v = 0; v < n; ++v)
            if (v != s) cv.b[static_cast<std::size_t>(v)] += delta[static_cast<std::size_t>(v)];
        cv.b[static_cast<std::size_t>(s)] += static_cast<double>(n - 1);
    }
    return cv;
}

void cumulative_betweenness(const AdHocNetwork& net, CentralityVector& cv) {
    const int n = net.size();
    if (static_cast<int>(cv.b.size()) != n)
        throw std::invalid_argument("cumulative_betweenness: centrality size mismatch");
    cv.b_cum.assign(static_cast<std::size_t>(n), 0.0);
    for (NodeId i = 0; i < n; ++i) {
        double sum = cv.b[static_cast<std::size_t>(i)];
        for (NodeId j : net.in_neighbors(i)) sum += cv.b[static_cast<std::size_t>(j)];
        cv.b_cum[static_cast<std::size_t>(i)] = sum;
    }
}

SourceRoutes metric_routes_from(const AdHocNetwork& net, NodeId source,
                                std::span<const double> weights) {
    const int n = net.size();
    if (static_cast<int>(weights.size()) != n)
        throw std::invalid_argument("metric_routes_from: weight vector size mismatch");
    for (double w : weights)
        if (!(w > 0.0)) throw std::invalid_argument("metric_routes_from: weights must be positive");

    SourceRoutes sr;
    sr.dist.assign(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
    sr.pred.assign(static_cast<std::size_t>(n), -1);
    sr.dist[static_cast<std::size_t>(source)] = 0.0;
    sr.pred[static_cast<std::size_t>(source)] = source;

    using Entry = std::pair<double, NodeId>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    heap.emplace(0.0, source);
    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (d > sr.dist[static_cast<std::size_t>(u)]) continue;
        // Relaxing u -> v costs weight(u): forwarding nodes are summed with
        // the sender included and the final recipient excluded.
        const double nd = d + weights[static_cast<std::size_t>(u)];
        for (NodeId v : net.neighbors(u)) {
            double& dv = sr.dist[static_cast<std::size_t>(v)];
            if (nd < dv) {
                dv = nd;
                sr.pred[static_cast<std::size_t>(v)] = u;
                heap.emplace(nd, v);
            } else if (nd == dv && u < sr.pred[static_cast<std::size_t>(v)]) {
                sr.pred[static_cast<std::size_t>(v)] = u;
            }
        }
    }
    for (NodeId v = 0; v < n; ++v)
        if (sr.pred[static_cast<std::size_t>(v)] < 0) throw UnreachablePairError(source, v);
    return sr;
}

}  // namespace adhoc
