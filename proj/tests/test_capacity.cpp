#include <doctest.h>

#include <cmath>

#include "adhoc/capacity.hpp"
#include "oracles.hpp"

using namespace adhoc;

namespace {

CentralityVector full_centrality(const AdHocNetwork& net) {
    CentralityVector cv = hopcount_betweenness(net);
    cumulative_betweenness(net, cv);
    return cv;
}

}  // namespace

TEST_SUITE("capacity") {

TEST_CASE("sending time") {
    SUBCASE("no in-neighbors means sending right away") {
        CentralityVector cv;
        cv.b = {5.0};
        cv.b_cum = {5.0};  // empty in-neighborhood sum
        CHECK(sending_time(cv, 0) == 1.0);
    }
    SUBCASE("fully connected network: tau = N") {
        for (int n : {4, 9}) {
            const auto net = test::make_fully_connected(n, 7);
            const auto cv = full_centrality(net);
            for (NodeId i = 0; i < n; ++i) CHECK(sending_time(cv, i) == doctest::Approx(n));
        }
    }
    SUBCASE("three-node path center waits twice the unit interval") {
        const auto net = test::make_path3();
        const auto cv = full_centrality(net);
        CHECK(sending_time(cv, 1) == 2.0);
    }
    SUBCASE("degenerate node is rejected") {
        CentralityVector cv;
        cv.b = {0.0};
        cv.b_cum = {0.0};
        CHECK_THROWS_AS(sending_time(cv, 0), std::invalid_argument);
    }
}

TEST_CASE("fully connected throughput is exactly 1") {
    for (int n : {3, 10, 50}) {
        const auto net = test::make_fully_connected(n, 11);
        const auto est = estimate_throughput(net, full_centrality(net));
        CHECK(est.t_e2e == 1.0);
        CHECK(est.bottleneck == 0);  // all tie, smallest id
    }
}

TEST_CASE("central hub throughput is exactly 0.5") {
    const auto net = test::make_central_hub(5);
    auto cv = betweenness(net, hopcount_routes(net), test::leaf_traffic(net));
    cumulative_betweenness(net, cv);
    const auto est = estimate_throughput(net, cv);
    CHECK(est.t_e2e == 0.5);
    CHECK(est.bottleneck == 0);
}

TEST_CASE("rejected ansatz") {
    SUBCASE("fully connected still gives 1") {
        const auto net = test::make_fully_connected(10, 13);
        CHECK(rejected_ansatz_throughput(net, full_centrality(net)).t_e2e == 1.0);
    }
    SUBCASE("central hub collapses to 1/(N+1)") {
        const auto net = test::make_central_hub(5);
        auto cv = betweenness(net, hopcount_routes(net), test::leaf_traffic(net));
        cumulative_betweenness(net, cv);
        const auto est = rejected_ansatz_throughput(net, cv);
        CHECK(est.t_e2e == 1.0 / 6.0);
        CHECK(est.bottleneck == 0);
    }
    SUBCASE("three-node path") {
        const auto net = test::make_path3();
        const auto est = rejected_ansatz_throughput(net, full_centrality(net));
        CHECK(est.t_e2e == 0.5);
    }
}

TEST_CASE("three-node path estimate") {
    const auto net = test::make_path3();
    const auto est = estimate_throughput(net, full_centrality(net));
    CHECK(est.t_e2e == 0.75);
    CHECK(est.bottleneck == 1);
}

TEST_CASE("critical rates") {
    SUBCASE("fully connected: 1/N per node") {
        const auto net = test::make_fully_connected(10, 17);
        const auto rates = critical_rates(net, full_centrality(net));
        for (double r : rates) CHECK(r == doctest::Approx(0.1).epsilon(1e-12));
    }
    SUBCASE("three-node path") {
        const auto net = test::make_path3();
        const auto rates = critical_rates(net, full_centrality(net));
        CHECK(rates[0] == 2.0 / 6.0);
        CHECK(rates[1] == 2.0 / 8.0);
        CHECK(rates[2] == 2.0 / 6.0);
    }
    SUBCASE("identity t_e2e = N * min rate") {
        for (std::uint64_t seed : {3ull, 23ull}) {
            const auto net = test::make_connected_network(30, 3, seed);
            const auto cv = full_centrality(net);
            const auto est = estimate_throughput(net, cv);
            double min_rate = est.per_node_critical_rate[0];
            for (double r : est.per_node_critical_rate) min_rate = std::min(min_rate, r);
            CHECK(est.t_e2e == doctest::Approx(30.0 * min_rate).epsilon(1e-12));
        }
    }
}

TEST_CASE("identity: t_e2e times the bottleneck load equals the pair count") {
    for (std::uint64_t seed : {5ull, 6ull}) {
        const auto net = test::make_connected_network(25, 3, seed);
        const auto cv = full_centrality(net);
        const auto est = estimate_throughput(net, cv);
        double max_cum = 0.0;
        for (double c : cv.b_cum) max_cum = std::max(max_cum, c);
        CHECK(est.t_e2e * max_cum == doctest::Approx(25.0 * 24.0).epsilon(1e-12));
    }
}

TEST_CASE("raising any single B_cum never raises the estimate") {
    const auto net = test::make_connected_network(15, 3, 29);
    auto cv = full_centrality(net);
    const double base = estimate_throughput(net, cv).t_e2e;
    for (NodeId i = 0; i < 15; ++i) {
        CentralityVector bumped = cv;
        bumped.b_cum[i] *= 1.5;
        CHECK(estimate_throughput(net, bumped).t_e2e <= base + 1e-12);
    }
}

TEST_CASE("fused hop-count objective matches the explicit pipeline") {
    for (std::uint64_t seed : {31ull, 37ull}) {
        const auto net = test::make_connected_network(35, 4, seed);
        CHECK(hopcount_throughput(net) ==
              doctest::Approx(estimate_throughput(net, full_centrality(net)).t_e2e)
                  .epsilon(1e-12));
    }
}

TEST_CASE("minimum-node-degree networks clear the central-hub floor") {
    for (std::uint64_t seed : {41ull, 43ull}) {
        const auto net = test::make_connected_network(120, 8, seed);
        const double t = hopcount_throughput(net);
        CHECK(t > 0.5);
        // Well above the size offset the multihop network also beats the
        // fully connected limit.
        CHECK(t > 1.0);
    }
}

}  // TEST_SUITE
