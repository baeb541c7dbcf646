#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "adhoc/capacity.hpp"
#include "adhoc/geomnet.hpp"

namespace adhoc {

struct OptimizerConfig {
    int n_perturb = 1;                      // nodes perturbed per meta-round
    int max_meta_rounds = 0;                // perturbation cycles after the first local max
    bool stop_after_first_local_max = true;
    std::uint64_t seed = 0;
};

enum class MoveKind { None, Up, Down };

struct MoveRecord {
    int meta_round = 0;
    int round = 0;
    NodeId node = -1;
    MoveKind move = MoveKind::None;
    double objective_before = 0.0;
    double objective_after = 0.0;
    bool accepted = false;
};

struct OptimizationTrace {
    std::vector<MoveRecord> moves;
    std::vector<double> local_max_objectives;  // one per completed meta-round
    double initial_objective = 0.0;
    double best_objective = 0.0;
    AdHocNetwork best_network;
    std::vector<std::pair<NodeId, NodeId>> added_links;  // in best but not initial
};

/// Rounds of per-node {up, down, keep} exploration on the throughput
/// estimate; a gradient phase ends when a full round accepts nothing. With
/// meta-rounds enabled, each local maximum is perturbed and the search
/// continues; the best network ever seen is returned.
OptimizationTrace optimize(const AdHocNetwork& net, const OptimizerConfig& cfg);

struct LinkRanking {
    struct Entry {
        NodeId a = -1, b = -1;
        double objective_after = 0.0;
        double gain = 0.0;
        double cumulative_fraction = 0.0;  // of (final - initial); may exceed 1
    };
    std::vector<Entry> entries;
    double initial_objective = 0.0;
    double final_objective = 0.0;
};

using ObjectiveFn = std::function<double(const AdHocNetwork&)>;

/// Greedy forward selection over the links present in `final` but not in
/// `initial`: at each step the single addition with the largest objective
/// wins. The objective defaults to the analytic estimate; a caller may
/// substitute a simulated throughput at much higher cost.
LinkRanking rank_new_links(const AdHocNetwork& initial, const AdHocNetwork& final_net,
                           const ObjectiveFn& objective = {});

struct GreedyTags {
    std::vector<NodeId> up;
    std::vector<NodeId> down;
};

/// Tag rules evaluated on a frozen B_cum snapshot.
GreedyTags greedy_tags_attempt_one(const AdHocNetwork& net, const CentralityVector& cv);
GreedyTags greedy_tags_attempt_two(const AdHocNetwork& net, const CentralityVector& cv);
GreedyTags greedy_tags_attempt_three(const AdHocNetwork& net, const CentralityVector& cv);

struct GreedySeries {
    std::vector<double> objective;  // index = round, [0] = baseline
    AdHocNetwork final_network;
};

GreedySeries greedy_attempt_one(const AdHocNetwork& net, int rounds);
GreedySeries greedy_attempt_two(const AdHocNetwork& net, int rounds);
GreedySeries greedy_attempt_three(const AdHocNetwork& net, int rounds);

}  // namespace adhoc
