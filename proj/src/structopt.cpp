#include "adhoc/structopt.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

#include "adhoc/parallel.hpp"
#include "adhoc/random.hpp"

namespace adhoc {

namespace {

double default_objective(const AdHocNetwork& net) { return hopcount_throughput(net); }

/// One gradient phase: rounds of per-node three-way comparison until a full
/// round accepts no improvement. Both candidate moves are evaluated from the
/// same starting network; ties favor keep, then down, then up.
double gradient_phase(AdHocNetwork& net, double obj, int meta_round, int& round_counter, Rng& rng,
                      OptimizationTrace& trace) {
    const int n = net.size();
    std::vector<NodeId> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);

    bool improved = true;
    while (improved) {
        improved = false;
        rng.shuffle(order);  // each node is randomly picked once per round
        const int round = round_counter++;
        for (NodeId i : order) {
            const double before = obj;

            AdHocNetwork up_net = net;
            const bool up_ok = up_net.step_up(i).applied;
            const double up_obj =
                up_ok ? default_objective(up_net) : -std::numeric_limits<double>::infinity();

            AdHocNetwork down_net = net;
            const bool down_ok = down_net.step_down(i).applied;
            const double down_obj =
                down_ok ? default_objective(down_net) : -std::numeric_limits<double>::infinity();

            MoveKind kind = MoveKind::None;
            double best = obj;
            if (down_obj > best) {
                best = down_obj;
                kind = MoveKind::Down;
            }
            if (up_obj > best) {
                best = up_obj;
                kind = MoveKind::Up;
            }

            if (kind == MoveKind::Down) {
                net = std::move(down_net);
                obj = best;
                improved = true;
            } else if (kind == MoveKind::Up) {
                net = std::move(up_net);
                obj = best;
                improved = true;
            }
            trace.moves.push_back(
                {meta_round, round, i, kind, before, obj, kind != MoveKind::None});
        }
    }
    return obj;
}

void perturb(AdHocNetwork& net, int n_perturb, Rng& rng) {
    const int n = net.size();
    std::vector<NodeId> ids(static_cast<std::size_t>(n));
    std::iota(ids.begin(), ids.end(), 0);
    rng.shuffle(ids);
    const int count = std::min(n_perturb, n);
    for (int k = 0; k < count; ++k) {
        const NodeId i = ids[static_cast<std::size_t>(k)];
        const bool up_first = rng.bernoulli(0.5);
        if (up_first) {
            if (!net.step_up(i).applied) net.step_down(i);
        } else {
            if (!net.step_down(i).applied) net.step_up(i);
        }
    }
}

}  // namespace

OptimizationTrace optimize(const AdHocNetwork& net, const OptimizerConfig& cfg) {
    if (cfg.n_perturb < 1) throw std::invalid_argument("optimize: n_perturb must be >= 1");
    if (cfg.max_meta_rounds < 0)
        throw std::invalid_argument("optimize: max_meta_rounds must be >= 0");

    Rng rng(derive_seed(cfg.seed, "optimizer"));
    OptimizationTrace trace;
    trace.initial_objective = default_objective(net);

    AdHocNetwork current = net;
    double obj = trace.initial_objective;
    trace.best_network = current;
    trace.best_objective = obj;

    int round_counter = 0;
    const int meta_rounds = cfg.stop_after_first_local_max ? 0 : cfg.max_meta_rounds;
    for (int meta = 0; meta <= meta_rounds; ++meta) {
        if (meta > 0) {
            perturb(current, cfg.n_perturb, rng);
            obj = default_objective(current);
        }
        obj = gradient_phase(current, obj, meta, round_counter, rng, trace);
        trace.local_max_objectives.push_back(obj);
        if (obj > trace.best_objective) {
            trace.best_objective = obj;
            trace.best_network = current;
        }
    }

    // Links present at the end but not at the start.
    const auto before = net.bidirected_links();
    const std::set<std::pair<NodeId, NodeId>> initial(before.begin(), before.end());
    for (const auto& link : trace.best_network.bidirected_links())
        if (!initial.count(link)) trace.added_links.push_back(link);
    return trace;
}

namespace {

// Insert one bidirected link: both endpoints rise just far enough to reach
// each other, nobody else is forced.
void raise_to_link(AdHocNetwork& net, NodeId a, NodeId b) {
    net.raise_rung(a, net.ladder_position(a, b));
    net.raise_rung(b, net.ladder_position(b, a));
}

}  // namespace

LinkRanking rank_new_links(const AdHocNetwork& initial, const AdHocNetwork& final_net,
                           const ObjectiveFn& objective) {
    const ObjectiveFn obj_fn = objective ? objective : ObjectiveFn(default_objective);

    const auto before = initial.bidirected_links();
    const std::set<std::pair<NodeId, NodeId>> old_links(before.begin(), before.end());
    std::vector<std::pair<NodeId, NodeId>> candidates;
    for (const auto& link : final_net.bidirected_links())
        if (!old_links.count(link)) candidates.push_back(link);

    LinkRanking ranking;
    ranking.initial_objective = obj_fn(initial);
    ranking.final_objective = obj_fn(final_net);
    if (candidates.empty()) return ranking;

    const double gap = ranking.final_objective - ranking.initial_objective;
    AdHocNetwork current = initial;
    double current_obj = ranking.initial_objective;

    std::vector<double> scores(candidates.size());
    while (!candidates.empty()) {
        // Candidate evaluations are pure; scan them in parallel and pick the
        // winner sequentially so the ranking stays deterministic.
        scores.resize(candidates.size());
        parallel_for(static_cast<int>(candidates.size()), [&](int c) {
            AdHocNetwork trial = current;
            raise_to_link(trial, candidates[static_cast<std::size_t>(c)].first,
                          candidates[static_cast<std::size_t>(c)].second);
            scores[static_cast<std::size_t>(c)] = obj_fn(trial);
        });
        double best_obj = -std::numeric_limits<double>::infinity();
        std::size_t best_idx = 0;
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            if (scores[c] > best_obj) {
                best_obj = scores[c];
                best_idx = c;
            }
        }
        const auto link = candidates[best_idx];
        candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(best_idx));
        raise_to_link(current, link.first, link.second);

        LinkRanking::Entry entry;
        entry.a = link.first;
        entry.b = link.second;
        entry.objective_after = best_obj;
        entry.gain = best_obj - current_obj;
        entry.cumulative_fraction = gap != 0.0 ? (best_obj - ranking.initial_objective) / gap : 0.0;
        ranking.entries.push_back(entry);
        current_obj = best_obj;
    }
    return ranking;
}

namespace {

GreedyTags tags_attempt_one(const AdHocNetwork& net, const CentralityVector& cv) {
    const int n = net.size();
    std::vector<char> tagged(static_cast<std::size_t>(n), 0);
    for (NodeId i = 0; i < n; ++i) {
        // Vote for the smallest B_cum within {i} and its neighborhood.
        NodeId best = i;
        for (NodeId j : net.neighbors(i))
            if (cv.b_cum[static_cast<std::size_t>(j)] < cv.b_cum[static_cast<std::size_t>(best)] ||
                (cv.b_cum[static_cast<std::size_t>(j)] == cv.b_cum[static_cast<std::size_t>(best)] &&
                 j < best))
                best = j;
        tagged[static_cast<std::size_t>(best)] = 1;
    }
    GreedyTags tags;
    for (NodeId i = 0; i < n; ++i)
        if (tagged[static_cast<std::size_t>(i)]) tags.up.push_back(i);
    return tags;
}

GreedyTags tags_attempt_two(const AdHocNetwork& net, const CentralityVector& cv) {
    const int n = net.size();
    GreedyTags tags;
    for (NodeId i = 0; i < n; ++i) {
        bool local_min = true;
        for (NodeId j : net.neighbors(i))
            if (!(cv.b_cum[static_cast<std::size_t>(i)] < cv.b_cum[static_cast<std::size_t>(j)])) {
                local_min = false;
                break;
            }
        if (local_min) tags.up.push_back(i);
    }
    return tags;
}

GreedyTags tags_attempt_three(const AdHocNetwork& net, const CentralityVector& cv) {
    GreedyTags tags = tags_attempt_two(net, cv);
    const int n = net.size();
    for (NodeId i = 0; i < n; ++i) {
        const auto nbrs = net.neighbors(i);
        if (nbrs.empty()) continue;
        bool local_max = true;
        for (NodeId j : nbrs)
            if (!(cv.b_cum[static_cast<std::size_t>(i)] > cv.b_cum[static_cast<std::size_t>(j)])) {
                local_max = false;
                break;
            }
        if (local_max) tags.down.push_back(i);
    }
    return tags;
}

GreedySeries run_greedy(const AdHocNetwork& net, int attempt, int rounds) {
    if (rounds < 0) throw std::invalid_argument("greedy: rounds must be >= 0");

    GreedySeries series;
    series.final_network = net;
    AdHocNetwork& current = series.final_network;
    series.objective.push_back(default_objective(current));

    // Attempt three may shed links only while staying at or above the
    // construction-time degree.
    const int n = net.size();
    std::vector<int> initial_degree(static_cast<std::size_t>(n));
    for (NodeId i = 0; i < n; ++i) initial_degree[static_cast<std::size_t>(i)] = net.degree(i);

    for (int round = 1; round <= rounds; ++round) {
        CentralityVector cv = hopcount_betweenness(current);
        cumulative_betweenness(current, cv);
        GreedyTags tags;
        switch (attempt) {
            case 1: tags = tags_attempt_one(current, cv); break;
            case 2: tags = tags_attempt_two(current, cv); break;
            case 3: tags = tags_attempt_three(current, cv); break;
            default: throw std::invalid_argument("greedy: unknown attempt");
        }
        for (NodeId i : tags.up) current.step_up(i);
        for (NodeId i : tags.down) {
            AdHocNetwork candidate = current;
            if (!candidate.step_down(i).applied) continue;
            if (candidate.degree(i) < initial_degree[static_cast<std::size_t>(i)]) continue;
            current = std::move(candidate);
        }
        series.objective.push_back(default_objective(current));
    }
    return series;
}

}  // namespace

GreedyTags greedy_tags_attempt_one(const AdHocNetwork& net, const CentralityVector& cv) {
    return tags_attempt_one(net, cv);
}
GreedyTags greedy_tags_attempt_two(const AdHocNetwork& net, const CentralityVector& cv) {
    return tags_attempt_two(net, cv);
}
GreedyTags greedy_tags_attempt_three(const AdHocNetwork& net, const CentralityVector& cv) {
    return tags_attempt_three(net, cv);
}

GreedySeries greedy_attempt_one(const AdHocNetwork& net, int rounds) {
    return run_greedy(net, 1, rounds);
}
GreedySeries greedy_attempt_two(const AdHocNetwork& net, int rounds) {
    return run_greedy(net, 2, rounds);
}
GreedySeries greedy_attempt_three(const AdHocNetwork& net, int rounds) {
    return run_greedy(net, 3, rounds);
}

}  // namespace adhoc
