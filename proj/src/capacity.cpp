#include "adhoc/capacity.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace adhoc {

namespace {

void check_centrality(const AdHocNetwork& net, const CentralityVector& cv) {
    const auto n = static_cast<std::size_t>(net.size());
    if (cv.b.size() != n || cv.b_cum.size() != n)
        throw std::invalid_argument("capacity: centrality vector does not match the network");
}

NodeId argmax_b_cum(const CentralityVector& cv) {
    NodeId best = 0;
    for (NodeId i = 1; i < static_cast<NodeId>(cv.b_cum.size()); ++i)
        if (cv.b_cum[static_cast<std::size_t>(i)] > cv.b_cum[static_cast<std::size_t>(best)])
            best = i;
    return best;  // smallest id on ties
}

}  // namespace

double sending_time(const CentralityVector& cv, NodeId i) {
    const double b = cv.b[static_cast<std::size_t>(i)];
    if (!(b > 0.0))
        throw std::invalid_argument("sending_time: degenerate node " + std::to_string(i) +
                                    " with B = 0");
    return cv.b_cum[static_cast<std::size_t>(i)] / b;
}

ThroughputEstimate estimate_throughput(const AdHocNetwork& net, const CentralityVector& cv) {
    check_centrality(net, cv);
    const double pairs = static_cast<double>(cv.pair_count);
    ThroughputEstimate est;
    est.bottleneck = argmax_b_cum(cv);
    est.t_e2e = pairs / cv.b_cum[static_cast<std::size_t>(est.bottleneck)];
    est.per_node_critical_rate = critical_rates(net, cv);
    return est;
}

ThroughputEstimate rejected_ansatz_throughput(const AdHocNetwork& net, const CentralityVector& cv) {
    check_centrality(net, cv);
    const double pairs = static_cast<double>(cv.pair_count);
    const int n = net.size();
    ThroughputEstimate est;
    double worst = -1.0;
    for (NodeId i = 0; i < n; ++i) {
        const double load = cv.b[static_cast<std::size_t>(i)] * (1.0 + net.in_degree(i));
        if (load > worst) {
            worst = load;
            est.bottleneck = i;
        }
    }
    est.t_e2e = pairs / worst;
    est.per_node_critical_rate.resize(static_cast<std::size_t>(n));
    for (NodeId i = 0; i < n; ++i)
        est.per_node_critical_rate[static_cast<std::size_t>(i)] =
            pairs / n / (cv.b[static_cast<std::size_t>(i)] * (1.0 + net.in_degree(i)));
    return est;
}

std::vector<double> critical_rates(const AdHocNetwork& net, const CentralityVector& cv) {
    check_centrality(net, cv);
    const int n = net.size();
    const double per_sender = static_cast<double>(cv.pair_count) / n;  // N-1 for full traffic
    std::vector<double> rates(static_cast<std::size_t>(n));
    for (NodeId i = 0; i < n; ++i)
        rates[static_cast<std::size_t>(i)] = per_sender / cv.b_cum[static_cast<std::size_t>(i)];
    return rates;
}

double hopcount_throughput(const AdHocNetwork& net) {
    CentralityVector cv = hopcount_betweenness(net);
    cumulative_betweenness(net, cv);
    double worst = 0.0;
    for (double c : cv.b_cum) worst = std::max(worst, c);
    return static_cast<double>(cv.pair_count) / worst;
}

}  // namespace adhoc
