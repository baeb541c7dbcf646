#pragma once

#include <cstdint>
#include <vector>

#include "adhoc/paths.hpp"

namespace adhoc {

/// Discrete-time packet traffic model. One step is one one-hop packet
/// transmission interval; per step every traffic node creates a packet with
/// probability mu towards a uniformly random destination, and a random
/// permutation of queue-backed senders competes for the single shared
/// channel under medium-access blocking.
struct SimConfig {
    double mu = 0.01;     // packets per node per step
    int horizon = 20000;  // steps
    int warmup = 2000;    // steps excluded from statistics
    std::uint64_t seed = 0;
    std::vector<NodeId> traffic_nodes;  // empty = all nodes send and receive
    bool check_invariants = false;      // per-step conservation and MAC exclusivity asserts
};

enum class Criticality { Subcritical, Supercritical, Inconclusive };

struct SimOutcome {
    double mu = 0.0;
    int horizon = 0;
    int warmup = 0;
    double delivered_per_step = 0.0;  // completed end-to-end communications per step
    std::int64_t created_total = 0;
    std::int64_t delivered_total = 0;
    std::vector<std::int64_t> queue_trajectory;       // total buffered packets per step
    std::vector<std::int32_t> created_series;         // per step
    std::vector<std::int32_t> delivered_series;       // per step
    std::vector<std::int64_t> per_node_peak_queue;
    Criticality verdict = Criticality::Inconclusive;
    bool supercritical = false;
};

SimOutcome simulate(const AdHocNetwork& net, const RouteTable& routes, const SimConfig& cfg);

/// Slope test on the second half of the horizon: supercritical queues grow
/// linearly without bound.
Criticality classify_criticality(const SimOutcome& outcome);

struct CriticalRateResult {
    double mu_crit = 0.0;
    double mu_lo = 0.0;  // verified subcritical
    double mu_hi = 0.0;  // verified supercritical
    double t_e2e_sim = 0.0;
    int probes = 0;
};

/// Bisection on mu between a verified subcritical and supercritical bracket
/// until the relative bracket width drops below rel_tol.
CriticalRateResult find_critical_rate(const AdHocNetwork& net, const RouteTable& routes,
                                      const SimConfig& base, double rel_tol = 0.05);

}  // namespace adhoc
