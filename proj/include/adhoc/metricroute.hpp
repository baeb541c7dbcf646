#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "adhoc/paths.hpp"

namespace adhoc {

/// Self-consistent route determination under the cumulative-betweenness
/// routing metric: routes and metric are recalculated in alternating order,
/// one sender at a time, each sender already seeing the weights left behind
/// by the previous one. B uses single-route (0/1) counting, so the
/// maintained counts are exact integers.
struct MetricRoutingState {
    AdHocNetwork net;
    std::vector<std::vector<NodeId>> pred;  // [s][v]; empty row = routes not yet computed
    std::vector<std::int64_t> b;
    std::vector<std::int64_t> b_cum;
    int iteration_round = 0;

    bool routes_ready(NodeId s) const { return !pred[static_cast<std::size_t>(s)].empty(); }

    /// Dijkstra weights: current B_cum floored at 1 so untouched nodes keep
    /// their initialization value.
    std::vector<double> weights() const;

    CentralityVector centrality() const;
};

MetricRoutingState init_state(const AdHocNetwork& net);

/// Called after each sender finishes its route + metric update.
using PassObserver = std::function<void(const MetricRoutingState&, NodeId)>;

/// Run full iteration rounds. Nodes are picked in ascending id order by
/// default; pass a seed to use a fresh random permutation per round.
void run_iterations(MetricRoutingState& state, int rounds, const PassObserver& observer = {},
                    std::optional<std::uint64_t> shuffle_seed = std::nullopt);

/// Metric length of the stored route: B_cum summed over forwarding nodes,
/// sender included, recipient excluded.
double route_length(const MetricRoutingState& state, NodeId i, NodeId f);

RouteTable to_route_table(const MetricRoutingState& state);

/// Convenience: init + run + extract. Two rounds are enough in practice.
RouteTable metric_routes(const AdHocNetwork& net, int rounds = 2);

}  // namespace adhoc
