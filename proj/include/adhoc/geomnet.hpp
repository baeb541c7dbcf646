#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "adhoc/errors.hpp"

namespace adhoc {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

/// N i.i.d. uniform points on the unit square.
struct SpatialLayout {
    std::vector<Vec2> positions;
    std::uint64_t seed = 0;

    int size() const { return static_cast<int>(positions.size()); }
};

SpatialLayout generate_layout(int n, std::uint64_t seed);

/// Propagation model: a directed link i->j exists iff P_i / R_ij^alpha >= snr.
struct RadioParams {
    double alpha = 2.0;
    double snr = 1.0;
};

/// Immutable per-layout tables shared between all copies of a network.
/// ladder(i) lists the other nodes sorted by distance (ties by id), so a
/// node's transmission power is always one of N-1 discrete rungs.
struct NetworkGeometry {
    SpatialLayout layout;
    RadioParams params;
    int k_min = 0;
    int n = 0;
    std::vector<NodeId> ladder;           // n x (n-1), row i = others by (dist, id)
    std::vector<std::int32_t> position;   // n x n, 1-based rung of j on i's ladder
    std::vector<double> rung_cost;        // n x (n-1), snr * R^alpha per ladder slot
};

struct StepResult {
    bool applied = false;
    std::vector<NodeId> changed;  // nodes whose power changed
};

/// Geometric minimum-node-degree network: unit-square layout, per-node
/// transmission powers expressed as rungs on the distance ladder, and the
/// directed / bidirected link sets derived from them. Power values are the
/// minimal fixed point of the mutual forcing rule; the construction rungs
/// are kept as floors that step_down never undercuts.
class AdHocNetwork {
public:
    AdHocNetwork() = default;

    static AdHocNetwork build_min_degree(const SpatialLayout& layout, const RadioParams& params,
                                         int k_min);

    /// Reassemble from serialized parts. Links are always re-derived.
    static AdHocNetwork from_parts(SpatialLayout layout, RadioParams params, int k_min,
                                   std::vector<int> rungs, std::vector<int> floor_rungs);

    int size() const { return n_; }
    const SpatialLayout& layout() const { return geom_->layout; }
    const RadioParams& params() const { return geom_->params; }
    int min_degree_target() const { return geom_->k_min; }

    int rung(NodeId i) const { return rungs_[static_cast<std::size_t>(i)]; }
    int floor_rung(NodeId i) const { return floor_rungs_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& rungs() const { return rungs_; }
    const std::vector<int>& floor_rungs() const { return floor_rungs_; }
    double power(NodeId i) const { return powers_[static_cast<std::size_t>(i)]; }

    /// Node newly reached when i stands on `rung` (1-based).
    NodeId ladder_node(NodeId i, int rung) const {
        return geom_->ladder[static_cast<std::size_t>(i) * (n_ - 1) + rung - 1];
    }
    /// 1-based rung at which i reaches j.
    int ladder_position(NodeId i, NodeId j) const {
        return geom_->position[static_cast<std::size_t>(i) * n_ + j];
    }

    bool has_link(NodeId i, NodeId j) const { return reaches(i, j); }
    bool has_bidirected_link(NodeId i, NodeId j) const { return reaches(i, j) && reaches(j, i); }

    std::span<const NodeId> out_neighbors(NodeId i) const;
    std::span<const NodeId> in_neighbors(NodeId i) const;
    /// Bidirected neighborhood; the only links usable for routing.
    std::span<const NodeId> neighbors(NodeId i) const;

    int out_degree(NodeId i) const { return static_cast<int>(out_neighbors(i).size()); }
    int in_degree(NodeId i) const { return static_cast<int>(in_neighbors(i).size()); }
    int degree(NodeId i) const { return static_cast<int>(neighbors(i).size()); }

    double mean_degree() const;
    std::vector<std::pair<NodeId, NodeId>> bidirected_links() const;  // a < b

    /// Climb one rung; the newly reached node is forced up its own ladder
    /// until the new link is bidirected. Refused (applied=false) at the top.
    StepResult step_up(NodeId i);

    /// Descend one rung; a lost bidirected neighbor relaxes to the lowest
    /// rung that keeps its remaining bidirected links and respects its
    /// floor. Refused at the floor rung.
    StepResult step_down(NodeId i);

    /// Raise node i directly to `rung` with no neighbor side effects.
    /// Used for single-link insertion; never lowers.
    void raise_rung(NodeId i, int rung);

    friend bool operator==(const AdHocNetwork& a, const AdHocNetwork& b);

private:
    struct AdjacencyCache {
        bool valid = false;
        std::vector<std::int32_t> out_off, in_off, bi_off;
        std::vector<NodeId> out, in, bi;
    };

    AdHocNetwork(std::shared_ptr<const NetworkGeometry> geom, std::vector<int> rungs,
                 std::vector<int> floor_rungs);

    bool reaches(NodeId i, NodeId j) const {
        const int pos = ladder_position(i, j);
        return powers_[static_cast<std::size_t>(i)] >= rung_cost(i, pos);
    }
    double rung_cost(NodeId i, int rung) const {
        return geom_->rung_cost[static_cast<std::size_t>(i) * (n_ - 1) + rung - 1];
    }
    void set_rung(NodeId i, int rung);
    void ensure_links() const;
    void invalidate_links() { adj_.valid = false; }

    std::shared_ptr<const NetworkGeometry> geom_;
    int n_ = 0;
    std::vector<int> rungs_;
    std::vector<int> floor_rungs_;
    std::vector<double> powers_;
    mutable AdjacencyCache adj_;
};

/// True iff every node reaches every other via directed links.
bool is_strongly_connected(const AdHocNetwork& net);

/// True iff the bidirected link graph is connected (routability).
bool is_bidirected_connected(const AdHocNetwork& net);

std::shared_ptr<const NetworkGeometry> build_geometry(SpatialLayout layout, RadioParams params,
                                                      int k_min);

}  // namespace adhoc
