#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "adhoc/analysis.hpp"
#include "adhoc/geomnet.hpp"
#include "adhoc/metricroute.hpp"
#include "adhoc/paths.hpp"
#include "adhoc/structopt.hpp"
#include "adhoc/trafficsim.hpp"

namespace adhoc {

/// Shortest round-trip decimal representation.
std::string format_double(double v);

// Network file: self-describing JSON with positions + rungs; links are
// always re-derived, never stored.
std::string network_to_json_string(const AdHocNetwork& net);
AdHocNetwork network_from_json_string(const std::string& text);
void save_network(const AdHocNetwork& net, const std::filesystem::path& path);
AdHocNetwork load_network(const std::filesystem::path& path);

// CSV / text exports.
void write_centrality_csv(const std::filesystem::path& path, const CentralityVector& cv);
void write_trace_csv(const std::filesystem::path& path, const OptimizationTrace& trace);
void write_added_links_csv(const std::filesystem::path& path,
                           const std::vector<std::pair<NodeId, NodeId>>& links);
void write_link_ranking_csv(const std::filesystem::path& path, const LinkRanking& ranking);
void write_greedy_series_csv(const std::filesystem::path& path, const GreedySeries& series);
void write_sim_series_csv(const std::filesystem::path& path, const SimOutcome& outcome);
void write_sim_summary_csv(const std::filesystem::path& path, const SimOutcome& outcome);
void write_ensemble_csv(const std::filesystem::path& path, const EnsembleTable& table);
void write_fit_json(const std::filesystem::path& path, const ScalingFit& fit,
                    const std::string& kind, const std::string& column);
void write_compare_csv(const std::filesystem::path& path, const std::vector<ComparisonRow>& rows);

/// One line per ordered pair: source destination node sequence.
void write_routes_text(const std::filesystem::path& path, const RouteTable& routes);
RouteTable read_routes_text(const std::filesystem::path& path, int n);

/// Ensemble rows re-read from CSV (for fit / compare commands).
struct EnsembleCsv {
    std::string kind;
    std::vector<EnsembleRow> rows;
    std::vector<EnsembleAggregate> aggregate() const;
};
EnsembleCsv read_ensemble_csv(const std::filesystem::path& path);

}  // namespace adhoc
