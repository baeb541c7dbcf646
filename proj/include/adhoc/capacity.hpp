#pragma once

#include <vector>

#include "adhoc/paths.hpp"

namespace adhoc {

/// Analytic end-to-end throughput: completed end-to-end communications per
/// one-hop transmission time unit, with the node achieving the minimum.
struct ThroughputEstimate {
    double t_e2e = 0.0;
    NodeId bottleneck = -1;
    std::vector<double> per_node_critical_rate;  // packets per node per time unit
};

/// Expected one-hop intervals until node i can transmit: B_cum_i / B_i.
double sending_time(const CentralityVector& cv, NodeId i);

/// T_e2e = min_i pairs / B_cum_i, the optimization objective.
ThroughputEstimate estimate_throughput(const AdHocNetwork& net, const CentralityVector& cv);

/// Degree-based ansatz T_e2e = min_i pairs / (B_i (1 + k_i^in)). Kept as a
/// regression reference; it fails the central-hub consistency check.
ThroughputEstimate rejected_ansatz_throughput(const AdHocNetwork& net, const CentralityVector& cv);

/// Per-node critical packet creation rates; the network-wide critical load
/// is their minimum and t_e2e = N * min_i rate_i.
std::vector<double> critical_rates(const AdHocNetwork& net, const CentralityVector& cv);

/// Objective value under shortest-hop routing, fused recomputation.
double hopcount_throughput(const AdHocNetwork& net);

}  // namespace adhoc
