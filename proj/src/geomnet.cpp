#include "adhoc/geomnet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "adhoc/random.hpp"

namespace adhoc {

SpatialLayout generate_layout(int n, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("generate_layout: node count must be at least 2");
    SpatialLayout out;
    out.seed = seed;
    out.positions.resize(static_cast<std::size_t>(n));
    Rng rng(seed);
    for (auto& p : out.positions) {
        p.x = rng.uniform01();
        p.y = rng.uniform01();
    }
    return out;
}

std::shared_ptr<const NetworkGeometry> build_geometry(SpatialLayout layout, RadioParams params,
                                                      int k_min) {
    const int n = layout.size();
    if (n < 2) throw std::invalid_argument("network: need at least 2 nodes");
    if (params.alpha <= 0.0 || params.snr <= 0.0)
        throw std::invalid_argument("network: alpha and snr must be positive");

    auto geom = std::make_shared<NetworkGeometry>();
    geom->layout = std::move(layout);
    geom->params = params;
    geom->k_min = k_min;
    geom->n = n;
    geom->ladder.resize(static_cast<std::size_t>(n) * (n - 1));
    geom->position.assign(static_cast<std::size_t>(n) * n, 0);
    geom->rung_cost.resize(static_cast<std::size_t>(n) * (n - 1));

    const auto& pos = geom->layout.positions;
    std::vector<std::pair<double, NodeId>> order(static_cast<std::size_t>(n - 1));
    for (NodeId i = 0; i < n; ++i) {
        std::size_t m = 0;
        for (NodeId j = 0; j < n; ++j) {
            if (j == i) continue;
            const double dx = pos[i].x - pos[j].x;
            const double dy = pos[i].y - pos[j].y;
            order[m++] = {dx * dx + dy * dy, j};
        }
        std::sort(order.begin(), order.end());
        const std::size_t row = static_cast<std::size_t>(i) * (n - 1);
        for (std::size_t k = 0; k < order.size(); ++k) {
            geom->ladder[row + k] = order[k].second;
            geom->position[static_cast<std::size_t>(i) * n + order[k].second] =
                static_cast<std::int32_t>(k + 1);
            geom->rung_cost[row + k] = params.snr * std::pow(order[k].first, params.alpha * 0.5);
        }
    }
    return geom;
}

AdHocNetwork::AdHocNetwork(std::shared_ptr<const NetworkGeometry> geom, std::vector<int> rungs,
                           std::vector<int> floor_rungs)
    : geom_(std::move(geom)),
      n_(geom_->n),
      rungs_(std::move(rungs)),
      floor_rungs_(std::move(floor_rungs)) {
    powers_.resize(static_cast<std::size_t>(n_));
    for (NodeId i = 0; i < n_; ++i)
        powers_[static_cast<std::size_t>(i)] = rungs_[static_cast<std::size_t>(i)] == 0
                                                   ? 0.0
                                                   : rung_cost(i, rungs_[static_cast<std::size_t>(i)]);
}

void AdHocNetwork::set_rung(NodeId i, int rung) {
    rungs_[static_cast<std::size_t>(i)] = rung;
    powers_[static_cast<std::size_t>(i)] = rung == 0 ? 0.0 : rung_cost(i, rung);
}

AdHocNetwork AdHocNetwork::build_min_degree(const SpatialLayout& layout, const RadioParams& params,
                                            int k_min) {
    const int n = layout.size();
    if (k_min < 1 || k_min > n - 1)
        throw std::invalid_argument("build_min_degree: k_min must lie in [1, N-1]");

    auto geom = build_geometry(layout, params, k_min);

    // Mutual forcing rule, iterated synchronously to its fixed point: every
    // node must reach its k_min closest, and every node i that appears among
    // j's k_min closest must be reachable back from the forced node.
    std::vector<int> rungs(static_cast<std::size_t>(n), k_min);
    bool changed = true;
    while (changed) {
        changed = false;
        for (NodeId j = 0; j < n; ++j) {
            const std::size_t row = static_cast<std::size_t>(j) * (n - 1);
            for (int k = 0; k < k_min; ++k) {
                const NodeId i = geom->ladder[row + k];
                const int need = geom->position[static_cast<std::size_t>(i) * n + j];
                if (rungs[static_cast<std::size_t>(i)] < need) {
                    rungs[static_cast<std::size_t>(i)] = need;
                    changed = true;
                }
            }
        }
    }

    std::vector<int> floors = rungs;
    return AdHocNetwork(std::move(geom), std::move(rungs), std::move(floors));
}

AdHocNetwork AdHocNetwork::from_parts(SpatialLayout layout, RadioParams params, int k_min,
                                      std::vector<int> rungs, std::vector<int> floor_rungs) {
    const int n = layout.size();
    if (static_cast<int>(rungs.size()) != n || static_cast<int>(floor_rungs.size()) != n)
        throw std::invalid_argument("from_parts: rung vectors must match the layout size");
    for (NodeId i = 0; i < n; ++i) {
        const int r = rungs[static_cast<std::size_t>(i)];
        const int f = floor_rungs[static_cast<std::size_t>(i)];
        if (r < 0 || r > n - 1 || f < 0 || f > r)
            throw std::invalid_argument("from_parts: invalid rung/floor for node " +
                                        std::to_string(i));
    }
    auto geom = build_geometry(std::move(layout), params, k_min);
    return AdHocNetwork(std::move(geom), std::move(rungs), std::move(floor_rungs));
}

void AdHocNetwork::ensure_links() const {
    if (adj_.valid) return;
    const int n = n_;
    adj_.out_off.assign(static_cast<std::size_t>(n) + 1, 0);
    adj_.in_off.assign(static_cast<std::size_t>(n) + 1, 0);
    adj_.bi_off.assign(static_cast<std::size_t>(n) + 1, 0);
    adj_.out.clear();
    adj_.in.clear();
    adj_.bi.clear();

    // Out-lists: ladder prefix by power (ties past the rung count as linked),
    // re-sorted by id so traversals are order-deterministic.
    std::vector<std::vector<NodeId>> out(static_cast<std::size_t>(n));
    for (NodeId i = 0; i < n; ++i) {
        const std::size_t row = static_cast<std::size_t>(i) * (n - 1);
        const double p = powers_[static_cast<std::size_t>(i)];
        auto first = geom_->rung_cost.begin() + static_cast<std::ptrdiff_t>(row);
        auto last = first + (n - 1);
        const auto m = static_cast<std::size_t>(std::upper_bound(first, last, p) - first);
        auto& lst = out[static_cast<std::size_t>(i)];
        lst.assign(geom_->ladder.begin() + static_cast<std::ptrdiff_t>(row),
                   geom_->ladder.begin() + static_cast<std::ptrdiff_t>(row + m));
        std::sort(lst.begin(), lst.end());
    }

    std::vector<std::int32_t> in_deg(static_cast<std::size_t>(n), 0);
    for (NodeId i = 0; i < n; ++i)
        for (NodeId j : out[static_cast<std::size_t>(i)]) ++in_deg[static_cast<std::size_t>(j)];

    std::size_t out_total = 0, in_total = 0;
    for (NodeId i = 0; i < n; ++i) {
        adj_.out_off[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(out_total);
        adj_.in_off[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(in_total);
        out_total += out[static_cast<std::size_t>(i)].size();
        in_total += static_cast<std::size_t>(in_deg[static_cast<std::size_t>(i)]);
    }
    adj_.out_off[static_cast<std::size_t>(n)] = static_cast<std::int32_t>(out_total);
    adj_.in_off[static_cast<std::size_t>(n)] = static_cast<std::int32_t>(in_total);
    adj_.out.resize(out_total);
    adj_.in.resize(in_total);

    std::vector<std::int32_t> in_fill(adj_.in_off.begin(), adj_.in_off.end() - 1);
    for (NodeId i = 0; i < n; ++i) {
        std::int32_t o = adj_.out_off[static_cast<std::size_t>(i)];
        for (NodeId j : out[static_cast<std::size_t>(i)]) {
            adj_.out[static_cast<std::size_t>(o++)] = j;
            adj_.in[static_cast<std::size_t>(in_fill[static_cast<std::size_t>(j)]++)] = i;
        }
    }

    for (NodeId i = 0; i < n; ++i) {
        adj_.bi_off[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(adj_.bi.size());
        for (NodeId j : out[static_cast<std::size_t>(i)])
            if (reaches(j, i)) adj_.bi.push_back(j);
    }
    adj_.bi_off[static_cast<std::size_t>(n)] = static_cast<std::int32_t>(adj_.bi.size());
    adj_.valid = true;
}

std::span<const NodeId> AdHocNetwork::out_neighbors(NodeId i) const {
    ensure_links();
    const auto b = adj_.out_off[static_cast<std::size_t>(i)];
    const auto e = adj_.out_off[static_cast<std::size_t>(i) + 1];
    return {adj_.out.data() + b, static_cast<std::size_t>(e - b)};
}

std::span<const NodeId> AdHocNetwork::in_neighbors(NodeId i) const {
    ensure_links();
    const auto b = adj_.in_off[static_cast<std::size_t>(i)];
    const auto e = adj_.in_off[static_cast<std::size_t>(i) + 1];
    return {adj_.in.data() + b, static_cast<std::size_t>(e - b)};
}

std::span<const NodeId> AdHocNetwork::neighbors(NodeId i) const {
    ensure_links();
    const auto b = adj_.bi_off[static_cast<std::size_t>(i)];
    const auto e = adj_.bi_off[static_cast<std::size_t>(i) + 1];
    return {adj_.bi.data() + b, static_cast<std::size_t>(e - b)};
}

double AdHocNetwork::mean_degree() const {
    ensure_links();
    return static_cast<double>(adj_.bi.size()) / n_;
}

std::vector<std::pair<NodeId, NodeId>> AdHocNetwork::bidirected_links() const {
    std::vector<std::pair<NodeId, NodeId>> links;
    for (NodeId i = 0; i < n_; ++i)
        for (NodeId j : neighbors(i))
            if (i < j) links.emplace_back(i, j);
    return links;
}

StepResult AdHocNetwork::step_up(NodeId i) {
    if (rungs_[static_cast<std::size_t>(i)] >= n_ - 1) return {};

    StepResult res;
    res.applied = true;
    set_rung(i, rungs_[static_cast<std::size_t>(i)] + 1);
    res.changed.push_back(i);

    // Newly reached node climbs until the link is bidirected.
    const NodeId j = ladder_node(i, rungs_[static_cast<std::size_t>(i)]);
    const int need = ladder_position(j, i);
    if (rungs_[static_cast<std::size_t>(j)] < need) {
        set_rung(j, need);
        res.changed.push_back(j);
    }
    invalidate_links();
    return res;
}

StepResult AdHocNetwork::step_down(NodeId i) {
    if (rungs_[static_cast<std::size_t>(i)] <= floor_rungs_[static_cast<std::size_t>(i)]) return {};

    const NodeId j = ladder_node(i, rungs_[static_cast<std::size_t>(i)]);
    const bool lost_bidirected = has_bidirected_link(i, j);
    set_rung(i, rungs_[static_cast<std::size_t>(i)] - 1);
    invalidate_links();

    StepResult res;
    res.applied = true;
    res.changed.push_back(i);

    if (lost_bidirected) {
        // The lost neighbor descends to the rung just before another of its
        // bidirected links would break, never below its floor.
        int need = floor_rungs_[static_cast<std::size_t>(j)];
        for (NodeId l = 0; l < n_; ++l) {
            if (l == j) continue;
            if (reaches(j, l) && reaches(l, j)) need = std::max(need, ladder_position(j, l));
        }
        if (need < rungs_[static_cast<std::size_t>(j)]) {
            set_rung(j, need);
            res.changed.push_back(j);
            invalidate_links();
        }
    }
    return res;
}

void AdHocNetwork::raise_rung(NodeId i, int rung) {
    if (rung > n_ - 1) throw std::invalid_argument("raise_rung: rung beyond the ladder");
    if (rung <= rungs_[static_cast<std::size_t>(i)]) return;
    set_rung(i, rung);
    invalidate_links();
}

bool operator==(const AdHocNetwork& a, const AdHocNetwork& b) {
    if (a.n_ != b.n_) return false;
    if (a.rungs_ != b.rungs_ || a.floor_rungs_ != b.floor_rungs_) return false;
    if (a.geom_->params.alpha != b.geom_->params.alpha || a.geom_->params.snr != b.geom_->params.snr)
        return false;
    if (a.geom_->k_min != b.geom_->k_min) return false;
    for (int i = 0; i < a.n_; ++i) {
        if (a.geom_->layout.positions[static_cast<std::size_t>(i)].x !=
                b.geom_->layout.positions[static_cast<std::size_t>(i)].x ||
            a.geom_->layout.positions[static_cast<std::size_t>(i)].y !=
                b.geom_->layout.positions[static_cast<std::size_t>(i)].y)
            return false;
    }
    return true;
}

namespace {

int reachable_count(const AdHocNetwork& net, bool reversed) {
    const int n = net.size();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<NodeId> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        const NodeId u = stack.back();
        stack.pop_back();
        const auto nbrs = reversed ? net.in_neighbors(u) : net.out_neighbors(u);
        for (NodeId v : nbrs) {
            if (!seen[static_cast<std::size_t>(v)]) {
                seen[static_cast<std::size_t>(v)] = 1;
                ++count;
                stack.push_back(v);
            }
        }
    }
    return count;
}

}  // namespace

bool is_strongly_connected(const AdHocNetwork& net) {
    const int n = net.size();
    return reachable_count(net, false) == n && reachable_count(net, true) == n;
}

bool is_bidirected_connected(const AdHocNetwork& net) {
    const int n = net.size();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<NodeId> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        const NodeId u = stack.back();
        stack.pop_back();
        for (NodeId v : net.neighbors(u)) {
            if (!seen[static_cast<std::size_t>(v)]) {
                seen[static_cast<std::size_t>(v)] = 1;
                ++count;
                stack.push_back(v);
            }
        }
    }
    return count == n;
}

}  // namespace adhoc
