#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "adhoc/geomnet.hpp"

namespace adhoc {

enum class RouteMode { AllShortestDag, SingleRoute };

/// Routes for every ordered node pair, over bidirected links only.
///
/// AllShortestDag keeps, per source, the shortest-hop DAG with exact path
/// counts (b_mn) and predecessor sets. SingleRoute keeps one explicit route
/// per ordered pair as a predecessor tree per source; routes are extracted
/// by walking predecessors back from the destination.
struct RouteTable {
    RouteMode mode = RouteMode::AllShortestDag;
    int n = 0;

    // AllShortestDag
    std::vector<std::vector<std::int32_t>> hop_dist;        // [s][v]
    std::vector<std::vector<double>> path_count;            // [s][v], b_sv
    std::vector<std::vector<std::vector<NodeId>>> preds;    // [s][v]

    // SingleRoute
    std::vector<std::vector<NodeId>> pred;                  // [s][v], pred[s][s] = s
    std::vector<std::vector<double>> metric_dist;           // [s][v], optional

    double b_mn(NodeId m, NodeId n_to) const {
        return mode == RouteMode::AllShortestDag
                   ? path_count[static_cast<std::size_t>(m)][static_cast<std::size_t>(n_to)]
                   : 1.0;
    }
};

RouteTable hopcount_routes(const AdHocNetwork& net);

/// One deterministic route per ordered pair under hop count; equivalent to
/// materializing hopcount_routes with the lexicographic predecessor
/// tie-break but cheaper.
RouteTable hopcount_single_routes(const AdHocNetwork& net);

/// Materialize a single route per pair from a shortest-path DAG
/// (lexicographically smallest predecessor at equal distance).
RouteTable to_single_routes(const RouteTable& dag);

/// Node sequence s, ..., t of the stored route.
std::vector<NodeId> extract_route(const RouteTable& table, NodeId s, NodeId t);

/// Restriction of the end-to-end traffic to given sender/recipient sets;
/// empty means all nodes.
struct TrafficPattern {
    std::vector<NodeId> sources;
    std::vector<NodeId> targets;
};

/// Per-node betweenness B (route counts; senders included, recipients
/// excluded) and cumulative betweenness B_cum. pair_count records how many
/// ordered sender/recipient pairs were counted.
struct CentralityVector {
    std::vector<double> b;
    std::vector<double> b_cum;
    std::int64_t pair_count = 0;
};

CentralityVector betweenness(const AdHocNetwork& net, const RouteTable& routes);
CentralityVector betweenness(const AdHocNetwork& net, const RouteTable& routes,
                             const TrafficPattern& traffic);

/// Fused shortest-hop betweenness; equal to
/// betweenness(net, hopcount_routes(net)) without materializing the table.
CentralityVector hopcount_betweenness(const AdHocNetwork& net);

/// Fill cv.b_cum: B_cum_i = B_i + sum of B_j over directed in-neighbors j.
void cumulative_betweenness(const AdHocNetwork& net, CentralityVector& cv);

/// Single-source routes minimizing the summed node weights of all forwarding
/// nodes (source included, destination excluded).
struct SourceRoutes {
    std::vector<double> dist;
    std::vector<NodeId> pred;
};

SourceRoutes metric_routes_from(const AdHocNetwork& net, NodeId source,
                                std::span<const double> weights);

}  // namespace adhoc
