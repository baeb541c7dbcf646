#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "adhoc/geomnet.hpp"
#include "adhoc/structopt.hpp"
#include "adhoc/trafficsim.hpp"

namespace adhoc {

enum class Routing { HopCount, BcumMetric };

struct EnsembleSpec {
    int k_min = 8;
    bool optimized = false;
    Routing routing = Routing::HopCount;
    int metric_rounds = 2;
    std::vector<int> n_values;
    int realizations = 1;
    std::uint64_t base_seed = 1;
    bool with_simulation = false;
    RadioParams radio;
    OptimizerConfig opt;  // applied when optimized
    int sim_horizon = 20000;
    int sim_warmup = 2000;
    double sim_rel_tol = 0.05;
};

struct EnsembleRow {
    int n = 0;
    int realization = 0;
    std::uint64_t seed = 0;
    double t_est = 0.0;
    double t_sim = 0.0;  // NaN when simulation disabled
    bool ok = true;
    std::string error;
};

struct EnsembleAggregate {
    int n = 0;
    int count = 0;
    double mean_est = 0.0, se_est = 0.0;
    double mean_sim = 0.0, se_sim = 0.0;
};

struct EnsembleTable {
    EnsembleSpec spec;
    std::vector<EnsembleRow> rows;

    std::vector<EnsembleAggregate> aggregate() const;
    std::string kind_label() const;
};

/// Build / optimize / route / estimate / simulate every (N, realization)
/// member. Members run in parallel (ADHOCNET_WORKERS caps the worker count);
/// failures are recorded per row and skipped by the aggregation.
EnsembleTable run_ensemble(const EnsembleSpec& spec);

struct FitOptions {
    double n_min = 0.0;
    double n_max = 1e300;
    /// Restrict each candidate offset n0 to points with N >= 4*n0.
    bool four_n0_rule = true;
};

/// Power-law fit t ~ prefactor * (N - N0)^gamma via integer-N0 grid search
/// plus log-log linear least squares; the candidate with the smallest RMS
/// log-residual wins.
struct ScalingFit {
    int n0 = 0;
    double gamma = 0.0;
    double prefactor = 0.0;
    double residual_rms = 0.0;
    int points_used = 0;
    double window_min = 0.0, window_max = 0.0;  // N range of the points used
};

ScalingFit fit_scaling(std::span<const std::pair<double, double>> points,
                       const FitOptions& options = {});

struct ComparisonRow {
    int n = 0;
    double ratio_est = 0.0, se_ratio_est = 0.0;
    double ratio_sim = 0.0, se_ratio_sim = 0.0;
};

/// Ratios other/base over the shared N grid.
std::vector<ComparisonRow> compare_runs(const std::vector<EnsembleAggregate>& base,
                                        const std::vector<EnsembleAggregate>& other);
std::vector<ComparisonRow> compare_runs(const EnsembleTable& base, const EnsembleTable& other);

std::vector<EnsembleAggregate> aggregate_rows(const std::vector<EnsembleRow>& rows);

}  // namespace adhoc
