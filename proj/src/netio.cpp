#include "adhoc/netio.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace adhoc {

using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
    return in;
}

}  // namespace

std::string network_to_json_string(const AdHocNetwork& net) {
    json doc;
    doc["n"] = net.size();
    doc["seed"] = net.layout().seed;
    doc["alpha"] = net.params().alpha;
    doc["snr"] = net.params().snr;
    doc["k_min"] = net.min_degree_target();
    json positions = json::array();
    for (const auto& p : net.layout().positions) positions.push_back({p.x, p.y});
    doc["positions"] = std::move(positions);
    doc["rungs"] = net.rungs();
    doc["floor_rungs"] = net.floor_rungs();
    return doc.dump(2) + "\n";
}

AdHocNetwork network_from_json_string(const std::string& text) {
    const json doc = json::parse(text);
    SpatialLayout layout;
    layout.seed = doc.at("seed").get<std::uint64_t>();
    for (const auto& p : doc.at("positions"))
        layout.positions.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    if (doc.at("n").get<int>() != layout.size())
        throw std::invalid_argument("network file: n does not match the position list");
    RadioParams params;
    params.alpha = doc.at("alpha").get<double>();
    params.snr = doc.at("snr").get<double>();
    return AdHocNetwork::from_parts(std::move(layout), params, doc.at("k_min").get<int>(),
                                    doc.at("rungs").get<std::vector<int>>(),
                                    doc.at("floor_rungs").get<std::vector<int>>());
}

void save_network(const AdHocNetwork& net, const std::filesystem::path& path) {
    open_out(path) << network_to_json_string(net);
}

AdHocNetwork load_network(const std::filesystem::path& path) {
    std::ostringstream buf;
    buf << open_in(path).rdbuf();
    return network_from_json_string(buf.str());
}

void write_centrality_csv(const std::filesystem::path& path, const CentralityVector& cv) {
    auto out = open_out(path);
    out << "node_id,B,B_cum\n";
    for (std::size_t i = 0; i < cv.b.size(); ++i)
        out << i << ',' << format_double(cv.b[i]) << ',' << format_double(cv.b_cum[i]) << '\n';
}

namespace {

const char* move_name(MoveKind kind) {
    switch (kind) {
        case MoveKind::Up: return "up";
        case MoveKind::Down: return "down";
        default: return "none";
    }
}

}  // namespace

void write_trace_csv(const std::filesystem::path& path, const OptimizationTrace& trace) {
    auto out = open_out(path);
    out << "meta_round,round,node,move,objective_before,objective_after\n";
    for (const auto& m : trace.moves)
        out << m.meta_round << ',' << m.round << ',' << m.node << ',' << move_name(m.move) << ','
            << format_double(m.objective_before) << ',' << format_double(m.objective_after) << '\n';
}

void write_added_links_csv(const std::filesystem::path& path,
                           const std::vector<std::pair<NodeId, NodeId>>& links) {
    auto out = open_out(path);
    out << "node_a,node_b\n";
    for (const auto& [a, b] : links) out << a << ',' << b << '\n';
}

void write_link_ranking_csv(const std::filesystem::path& path, const LinkRanking& ranking) {
    auto out = open_out(path);
    out << "rank,node_a,node_b,objective_after,gain,cumulative_fraction\n";
    for (std::size_t k = 0; k < ranking.entries.size(); ++k) {
        const auto& e = ranking.entries[k];
        out << (k + 1) << ',' << e.a << ',' << e.b << ',' << format_double(e.objective_after) << ','
            << format_double(e.gain) << ',' << format_double(e.cumulative_fraction) << '\n';
    }
}

void write_greedy_series_csv(const std::filesystem::path& path, const GreedySeries& series) {
    auto out = open_out(path);
    out << "round,objective\n";
    for (std::size_t r = 0; r < series.objective.size(); ++r)
        out << r << ',' << format_double(series.objective[r]) << '\n';
}

void write_sim_series_csv(const std::filesystem::path& path, const SimOutcome& outcome) {
    auto out = open_out(path);
    out << "step,created,delivered,total_queue\n";
    for (std::size_t t = 0; t < outcome.queue_trajectory.size(); ++t)
        out << t << ',' << outcome.created_series[t] << ',' << outcome.delivered_series[t] << ','
            << outcome.queue_trajectory[t] << '\n';
}

namespace {

const char* verdict_name(Criticality verdict) {
    switch (verdict) {
        case Criticality::Subcritical: return "subcritical";
        case Criticality::Supercritical: return "supercritical";
        default: return "inconclusive";
    }
}

}  // namespace

void write_sim_summary_csv(const std::filesystem::path& path, const SimOutcome& outcome) {
    auto out = open_out(path);
    out << "mu,verdict,delivered_per_step,created_total,delivered_total,final_queue\n";
    out << format_double(outcome.mu) << ',' << verdict_name(outcome.verdict) << ','
        << format_double(outcome.delivered_per_step) << ',' << outcome.created_total << ','
        << outcome.delivered_total << ','
        << (outcome.queue_trajectory.empty() ? 0 : outcome.queue_trajectory.back()) << '\n';
}

void write_ensemble_csv(const std::filesystem::path& path, const EnsembleTable& table) {
    auto out = open_out(path);
    out << "kind,n,realization,seed,t_est,t_sim,ok,error\n";
    const std::string kind = table.kind_label();
    for (const auto& row : table.rows) {
        out << kind << ',' << row.n << ',' << row.realization << ',' << row.seed << ','
            << format_double(row.t_est) << ','
            << (std::isnan(row.t_sim) ? std::string() : format_double(row.t_sim)) << ','
            << (row.ok ? 1 : 0) << ',' << row.error << '\n';
    }
}

void write_fit_json(const std::filesystem::path& path, const ScalingFit& fit,
                    const std::string& kind, const std::string& column) {
    json doc;
    doc["kind"] = kind;
    doc["column"] = column;
    doc["n0"] = fit.n0;
    doc["gamma"] = fit.gamma;
    doc["prefactor"] = fit.prefactor;
    doc["residual_rms"] = fit.residual_rms;
    doc["points_used"] = fit.points_used;
    doc["window"] = {fit.window_min, fit.window_max};
    open_out(path) << doc.dump(2) << '\n';
}

void write_compare_csv(const std::filesystem::path& path, const std::vector<ComparisonRow>& rows) {
    auto out = open_out(path);
    out << "n,ratio_est,se_ratio_est,ratio_sim,se_ratio_sim\n";
    for (const auto& r : rows) {
        out << r.n << ',' << format_double(r.ratio_est) << ',' << format_double(r.se_ratio_est)
            << ',';
        if (!std::isnan(r.ratio_sim))
            out << format_double(r.ratio_sim) << ',' << format_double(r.se_ratio_sim);
        else
            out << ',';
        out << '\n';
    }
}

void write_routes_text(const std::filesystem::path& path, const RouteTable& routes) {
    auto out = open_out(path);
    for (NodeId s = 0; s < routes.n; ++s) {
        for (NodeId t = 0; t < routes.n; ++t) {
            if (s == t) continue;
            const auto route = extract_route(routes, s, t);
            out << s << ' ' << t;
            for (NodeId v : route) out << ' ' << v;
            out << '\n';
        }
    }
}

RouteTable read_routes_text(const std::filesystem::path& path, int n) {
    auto in = open_in(path);
    RouteTable table;
    table.mode = RouteMode::SingleRoute;
    table.n = n;
    table.pred.assign(static_cast<std::size_t>(n),
                      std::vector<NodeId>(static_cast<std::size_t>(n), -1));
    for (NodeId s = 0; s < n; ++s) table.pred[static_cast<std::size_t>(s)][static_cast<std::size_t>(s)] = s;

    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        NodeId s, t;
        if (!(ls >> s >> t)) throw std::runtime_error("routes file: malformed line: " + line);
        std::vector<NodeId> seq;
        NodeId v;
        while (ls >> v) seq.push_back(v);
        if (seq.size() < 2 || seq.front() != s || seq.back() != t)
            throw std::runtime_error("routes file: route does not match its pair: " + line);
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        for (NodeId node : seq) {
            if (node < 0 || node >= n) throw std::runtime_error("routes file: node out of range");
            if (seen[static_cast<std::size_t>(node)])
                throw std::runtime_error("routes file: route revisits a node: " + line);
            seen[static_cast<std::size_t>(node)] = 1;
        }
        auto& pred = table.pred[static_cast<std::size_t>(s)];
        for (std::size_t k = 1; k < seq.size(); ++k) {
            NodeId& p = pred[static_cast<std::size_t>(seq[k])];
            if (p >= 0 && p != seq[k - 1])
                throw std::runtime_error(
                    "routes file: routes from one source must form a tree: " + line);
            p = seq[k - 1];
        }
    }
    return table;
}

std::vector<EnsembleAggregate> EnsembleCsv::aggregate() const { return aggregate_rows(rows); }

EnsembleCsv read_ensemble_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    EnsembleCsv csv;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("ensemble csv: empty file");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string field;
        EnsembleRow row;
        std::getline(ls, csv.kind, ',');
        std::getline(ls, field, ',');
        row.n = std::stoi(field);
        std::getline(ls, field, ',');
        row.realization = std::stoi(field);
        std::getline(ls, field, ',');
        row.seed = std::stoull(field);
        std::getline(ls, field, ',');
        row.t_est = std::stod(field);
        std::getline(ls, field, ',');
        row.t_sim = field.empty() ? std::nan("") : std::stod(field);
        std::getline(ls, field, ',');
        row.ok = field == "1";
        std::getline(ls, row.error);
        csv.rows.push_back(std::move(row));
    }
    return csv;
}

}  // namespace adhoc
