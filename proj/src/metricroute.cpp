#include "adhoc/metricroute.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "adhoc/random.hpp"

namespace adhoc {

std::vector<double> MetricRoutingState::weights() const {
    std::vector<double> w(b_cum.size());
    for (std::size_t i = 0; i < b_cum.size(); ++i)
        w[i] = static_cast<double>(std::max<std::int64_t>(b_cum[i], 1));
    return w;
}

CentralityVector MetricRoutingState::centrality() const {
    CentralityVector cv;
    cv.b.assign(b.begin(), b.end());
    cv.b_cum.assign(b_cum.begin(), b_cum.end());
    std::int64_t pairs = 0;
    const auto n = static_cast<NodeId>(pred.size());
    for (NodeId s = 0; s < n; ++s)
        if (routes_ready(s)) pairs += n - 1;
    cv.pair_count = pairs;
    return cv;
}

MetricRoutingState init_state(const AdHocNetwork& net) {
    if (!is_strongly_connected(net))
        throw std::invalid_argument("init_state: network must be strongly connected");
    MetricRoutingState state;
    state.net = net;
    const auto n = static_cast<std::size_t>(net.size());
    state.pred.assign(n, {});
    state.b.assign(n, 0);
    state.b_cum.assign(n, 1);  // initialization: unit metric everywhere
    return state;
}

namespace {

/// Add or remove sender s's contribution to the betweenness counts: every
/// node of each stored route except the recipient.
void apply_sender_contribution(const std::vector<NodeId>& pred, NodeId s,
                               std::vector<std::int64_t>& b, std::int64_t sign) {
    const auto n = static_cast<NodeId>(pred.size());
    for (NodeId t = 0; t < n; ++t) {
        if (t == s) continue;
        NodeId v = pred[static_cast<std::size_t>(t)];
        while (v != s) {
            b[static_cast<std::size_t>(v)] += sign;
            v = pred[static_cast<std::size_t>(v)];
        }
        b[static_cast<std::size_t>(s)] += sign;
    }
}

void recompute_b_cum(const AdHocNetwork& net, const std::vector<std::int64_t>& b,
                     std::vector<std::int64_t>& b_cum) {
    const int n = net.size();
    for (NodeId i = 0; i < n; ++i) {
        std::int64_t sum = b[static_cast<std::size_t>(i)];
        for (NodeId j : net.in_neighbors(i)) sum += b[static_cast<std::size_t>(j)];
        b_cum[static_cast<std::size_t>(i)] = sum;
    }
}

}  // namespace

void run_iterations(MetricRoutingState& state, int rounds, const PassObserver& observer,
                    std::optional<std::uint64_t> shuffle_seed) {
    if (rounds < 1) throw std::invalid_argument("run_iterations: rounds must be >= 1");
    const int n = state.net.size();

    std::vector<NodeId> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::optional<Rng> rng;
    if (shuffle_seed) rng.emplace(*shuffle_seed);

    for (int round = 0; round < rounds; ++round) {
        if (rng) rng->shuffle(order);
        for (NodeId i : order) {
            auto& own = state.pred[static_cast<std::size_t>(i)];
            if (!own.empty()) apply_sender_contribution(own, i, state.b, -1);

            const auto w = state.weights();
            SourceRoutes sr = metric_routes_from(state.net, i, w);
            own = std::move(sr.pred);

            apply_sender_contribution(own, i, state.b, +1);
            recompute_b_cum(state.net, state.b, state.b_cum);
            if (observer) observer(state, i);
        }
        ++state.iteration_round;
    }
}

double route_length(const MetricRoutingState& state, NodeId i, NodeId f) {
    if (!state.routes_ready(i))
        throw std::runtime_error("route_length: routes for sender " + std::to_string(i) +
                                 " not computed");
    if (i == f) return 0.0;
    const auto& pred = state.pred[static_cast<std::size_t>(i)];
    double sum = 0.0;
    NodeId v = pred[static_cast<std::size_t>(f)];
    if (v < 0) throw std::runtime_error("route_length: route not computed");
    while (v != i) {
        sum += static_cast<double>(state.b_cum[static_cast<std::size_t>(v)]);
        v = pred[static_cast<std::size_t>(v)];
    }
    sum += static_cast<double>(state.b_cum[static_cast<std::size_t>(i)]);
    return sum;
}

RouteTable to_route_table(const MetricRoutingState& state) {
    RouteTable table;
    table.mode = RouteMode::SingleRoute;
    table.n = state.net.size();
    table.pred = state.pred;
    return table;
}

RouteTable metric_routes(const AdHocNetwork& net, int rounds) {
    MetricRoutingState state = init_state(net);
    run_iterations(state, rounds);
    return to_route_table(state);
}

}  // namespace adhoc
